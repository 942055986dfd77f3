"""Graphic and hypergraphic matroids with canonical forest orientations."""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Mapping, Sequence

from ..core import OptTracker, OrderedMatroid

HYPERGRAPHIC_LIMIT = 20


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def is_forest(n_vertices: int, pairs) -> bool:
    parent = list(range(n_vertices))
    for u, v in pairs:
        ru, rv = _find(parent, u), _find(parent, v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def canonical_orientation(forest: Mapping[int, tuple]) -> dict:
    """Orient a forest given as ``{label: (u, v)}``.

    Each component is rooted at its minimum vertex id and every edge points
    away from the root, so every vertex has in-degree at most one.
    """
    adj: dict = {}
    for lab, (u, v) in forest.items():
        if u == v:
            raise ValueError(f"edge {lab} is a loop, not a forest")
        adj.setdefault(u, []).append((v, lab))
        adj.setdefault(v, []).append((u, lab))
    arcs = {}
    seen = set()
    for root in sorted(adj):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, lab in adj[x]:
                if lab in arcs:
                    continue
                if y in seen:
                    raise ValueError("edge set contains a cycle")
                arcs[lab] = (x, y)
                seen.add(y)
                queue.append(y)
    return arcs


class GraphicMatroid(OrderedMatroid):
    """Edges of a multigraph; independent sets are forests."""

    family = "graphic"

    def __init__(self, n_vertices: int, edges: Sequence[Sequence[int]], order=None):
        edges = [tuple(int(x) for x in e) for e in edges]
        for i, e in enumerate(edges):
            if len(e) != 2 or not all(0 <= x < n_vertices for x in e):
                raise ValueError(f"edge {i} = {e} is not a pair of vertices in 0..{n_vertices - 1}")
        super().__init__(len(edges), order=order)
        self.n_vertices = int(n_vertices)
        self.edges = edges

    def indep(self, S) -> bool:
        E = self.edges
        return is_forest(self.n_vertices, (E[e] for e in S))

    def edge(self, r, X=None) -> tuple:
        return self.edges[r]

    def forest(self, X) -> dict:
        return {e: self.edges[e] for e in X}

    def opt_tracker(self):
        return _ForestTracker(self)

    def to_dict(self) -> dict:
        return {"family": self.family, "n": self.n, "n_vertices": self.n_vertices,
                "edges": [list(e) for e in self.edges], "order": list(self.order.ranking)}


class _ForestTracker(OptTracker):
    """Keeps OPT as an explicit forest; a new edge closing a cycle swaps out
    the worst edge on the tree path."""

    def __init__(self, matroid):
        super().__init__(matroid)
        self.adj = {}

    def _path(self, u, v):
        if u == v:
            return []
        adj = self.adj
        if u not in adj or v not in adj:
            return None
        prev = {u: None}
        stack = [u]
        while stack:
            x = stack.pop()
            if x == v:
                break
            for y, lab in adj[x].items():
                if y not in prev:
                    prev[y] = (x, lab)
                    stack.append(y)
        if v not in prev:
            return None
        path = []
        x = v
        while prev[x] is not None:
            x, lab = prev[x]
            path.append(lab)
        return path

    def _link(self, lab):
        u, v = self.m.edges[lab]
        self.adj.setdefault(u, {})[v] = lab
        self.adj.setdefault(v, {})[u] = lab

    def _cut(self, lab):
        u, v = self.m.edges[lab]
        del self.adj[u][v]
        del self.adj[v][u]

    def add(self, r):
        A = self.members
        if r in A:
            return True, None
        u, v = self.m.edges[r]
        if u == v:
            return False, None
        path = self._path(u, v)
        if path is None:
            A.add(r)
            self._link(r)
            return True, None
        key = self.key
        worst = max(path, key=key.__getitem__)
        if key[worst] < key[r]:
            return False, None
        self._cut(worst)
        A.discard(worst)
        A.add(r)
        self._link(r)
        return True, worst


class HypergraphicMatroid(OrderedMatroid):
    """Hyperedges; ``X`` is independent iff each member can be assigned a
    distinct vertex pair inside it so that the pairs form a forest."""

    family = "hypergraphic"

    def __init__(self, n_vertices: int, hyperedges: Sequence[Sequence[int]], order=None):
        hyperedges = [tuple(sorted(set(int(x) for x in h))) for h in hyperedges]
        for i, h in enumerate(hyperedges):
            if not all(0 <= x < n_vertices for x in h):
                raise ValueError(f"hyperedge {i} = {h} has a vertex outside 0..{n_vertices - 1}")
        super().__init__(len(hyperedges), order=order)
        self.n_vertices = int(n_vertices)
        self.hyperedges = hyperedges
        self._pairs = [list(combinations(h, 2)) for h in hyperedges]
        self._cache: dict = {}

    def _reset_order_caches(self):
        self._cache = {}

    def canonical_edges(self, X):
        """``{r: edge(r, X)}`` or ``None`` when ``X`` is dependent.

        Depth-first search over members in value order, trying vertex pairs in
        lexicographic order; the first forest found is the canonical one.
        """
        X = frozenset(X)
        if X in self._cache:
            return self._cache[X]
        if len(X) > HYPERGRAPHIC_LIMIT:
            raise ValueError(f"hypergraphic search limited to {HYPERGRAPHIC_LIMIT} hyperedges")
        members = self.order.sort(X)
        # quick necessary condition: the union of any subfamily needs |Y|+1 vertices
        verts = set()
        for r in members:
            verts.update(self.hyperedges[r])
        result = None
        if len(verts) >= len(members) + 1 or not members:
            result = self._search(members)
        if len(self._cache) > 200000:
            self._cache.clear()
        self._cache[X] = result
        return result

    def _search(self, members):
        parent = list(range(self.n_vertices))
        chosen = {}

        def root(x):
            while parent[x] != x:
                x = parent[x]
            return x

        def go(i):
            if i == len(members):
                return True
            r = members[i]
            for u, v in self._pairs[r]:
                ru, rv = root(u), root(v)
                if ru == rv:
                    continue
                parent[ru] = rv
                chosen[r] = (u, v)
                if go(i + 1):
                    return True
                parent[ru] = ru
                del chosen[r]
            return False

        return dict(chosen) if go(0) else None

    def indep(self, S) -> bool:
        return self.canonical_edges(S) is not None

    def edge(self, r, X) -> tuple:
        edges = self.canonical_edges(X)
        if edges is None:
            raise ValueError("set is dependent; no edge assignment")
        return edges[r]

    def forest(self, X) -> dict:
        edges = self.canonical_edges(X)
        if edges is None:
            raise ValueError("set is dependent; no edge assignment")
        return edges

    def to_dict(self) -> dict:
        return {"family": self.family, "n": self.n, "n_vertices": self.n_vertices,
                "edges": [list(h) for h in self.hyperedges], "order": list(self.order.ranking)}
