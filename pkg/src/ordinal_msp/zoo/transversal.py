"""Transversal matroids and gammoids, with canonical matchings and path systems.

All witnesses are built by augmenting in value order and scanning neighbours
by increasing vertex id, so they depend only on the queried set.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from ..core import OptTracker, OrderedMatroid


def _kuhn(adj, members, n_left):
    """Greedy augmenting-path matching; ``None`` if some member stays unmatched."""
    match_l = [-1] * n_left

    def attempt(x, seen):
        for l in adj[x]:
            if l in seen:
                continue
            seen.add(l)
            y = match_l[l]
            if y == -1 or attempt(y, seen):
                match_l[l] = x
                return True
        return False

    for x in members:
        if not attempt(x, set()):
            return None
    return {match_l[l]: l for l in range(n_left) if match_l[l] != -1}


class TransversalMatroid(OrderedMatroid):
    """Right vertices ``0..n-1`` of a bipartite graph; independent iff matchable."""

    family = "transversal"

    def __init__(self, n_left: int, adj: Sequence[Iterable[int]], order=None):
        adj = [tuple(sorted(set(int(l) for l in nb))) for nb in adj]
        for r, nb in enumerate(adj):
            for l in nb:
                if not 0 <= l < n_left:
                    raise ValueError(f"terminal {r} has neighbour {l} outside 0..{n_left - 1}")
        super().__init__(len(adj), order=order)
        self.n_left = int(n_left)
        self.adj = adj

    def indep(self, S) -> bool:
        return _kuhn(self.adj, list(S), self.n_left) is not None

    def canonical_matching(self, X) -> dict:
        """``M_X`` as ``{r: left vertex}``."""
        M = _kuhn(self.adj, self.order.sort(X), self.n_left)
        if M is None:
            raise ValueError("set is dependent; no covering matching")
        return M

    def opt_tracker(self):
        return _AlternatingTracker(self)

    def to_dict(self) -> dict:
        return {"family": self.family, "n": self.n, "n_left": self.n_left,
                "bipartite_adj": [list(nb) for nb in self.adj], "order": list(self.order.ranking)}


def canonical_matching(T: TransversalMatroid, X) -> dict:
    return T.canonical_matching(X)


class _AlternatingTracker(OptTracker):
    """Keeps any matching of OPT; one alternating search per arrival finds
    either an augmenting path or the circuit closed by the newcomer."""

    def __init__(self, matroid):
        super().__init__(matroid)
        self.match_r = {}
        self.match_l = {}

    def add(self, r):
        A = self.members
        if r in A:
            return True, None
        adj = self.m.adj
        match_l = self.match_l
        match_r = self.match_r
        prev = {r: None}
        queue = [r]
        free = None
        i = 0
        while i < len(queue) and free is None:
            x = queue[i]
            i += 1
            for l in adj[x]:
                y = match_l.get(l)
                if y is None:
                    free = (x, l)
                    break
                if y not in prev:
                    prev[y] = (x, l)
                    queue.append(y)
        if free is not None:
            x, l = free
            while True:
                match_r[x] = l
                match_l[l] = x
                if x == r:
                    break
                x, l = prev[x]
            A.add(r)
            return True, None
        key = self.key
        worst = max(prev, key=key.__getitem__)
        if worst == r:
            return False, None
        x = worst
        del match_r[worst]
        while x != r:
            px, pl = prev[x]
            match_r[px] = pl
            match_l[pl] = px
            x = px
        A.discard(worst)
        A.add(r)
        return True, worst


class _Flow:
    """Residual network for small augmenting-path max-flow computations."""

    def __init__(self, n_nodes: int):
        self.adj = [[] for _ in range(n_nodes)]
        self.to = []
        self.cap = []

    def add_node(self) -> int:
        self.adj.append([])
        return len(self.adj) - 1

    def add_arc(self, u: int, v: int, c: int) -> int:
        e = len(self.to)
        self.to += [v, u]
        self.cap += [c, 0]
        self.adj[u].append(e)
        self.adj[v].append(e + 1)
        return e

    def augment(self, s: int, t: int) -> int:
        """One shortest augmenting path (BFS in insertion order); returns the amount."""
        prev = {s: -1}
        queue = deque([s])
        to, cap, adj = self.to, self.cap, self.adj
        while queue:
            u = queue.popleft()
            if u == t:
                break
            for e in adj[u]:
                v = to[e]
                if cap[e] > 0 and v not in prev:
                    prev[v] = e
                    queue.append(v)
        if t not in prev:
            return 0
        amount = None
        v = t
        while v != s:
            e = prev[v]
            amount = cap[e] if amount is None else min(amount, cap[e])
            v = to[e ^ 1]
        v = t
        while v != s:
            e = prev[v]
            cap[e] -= amount
            cap[e ^ 1] += amount
            v = to[e ^ 1]
        return amount

    def flow_on(self, e: int) -> int:
        return self.cap[e ^ 1]


def _reach(n_nodes, arcs, starts, reverse=False):
    adj = [[] for _ in range(n_nodes)]
    for u, v in arcs:
        if reverse:
            adj[v].append(u)
        else:
            adj[u].append(v)
    seen = set(starts)
    stack = list(starts)
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


class GammoidMatroid(OrderedMatroid):
    """Terminals linked to sources by node-disjoint directed paths.

    Element ``i`` is the node ``terminals[i]``.  ``mu`` is the declared
    exchangeability bound (taken on trust, checked only on small instances).
    """

    family = "gammoid"

    def __init__(self, n_nodes: int, arcs: Sequence[Sequence[int]], sources: Iterable[int],
                 terminals: Sequence[int], mu: int | None = None, order=None):
        arcs = sorted({(int(u), int(v)) for u, v in arcs})
        terminals = [int(t) for t in terminals]
        sources = sorted({int(s) for s in sources})
        for u, v in arcs:
            if not (0 <= u < n_nodes and 0 <= v < n_nodes):
                raise ValueError(f"arc ({u}, {v}) has an endpoint outside 0..{n_nodes - 1}")
        if len(set(terminals)) != len(terminals):
            raise ValueError("terminals must be distinct nodes")
        if not all(0 <= t < n_nodes for t in terminals) or not all(0 <= s < n_nodes for s in sources):
            raise ValueError("sources and terminals must be nodes of the digraph")
        reach = _reach(n_nodes, arcs, sources)
        lost = [i for i, t in enumerate(terminals) if t not in reach]
        if lost:
            raise ValueError(f"terminals {lost} are not reachable from the sources")
        super().__init__(len(terminals), order=order)
        self.n_nodes = int(n_nodes)
        self.arcs = arcs
        self.sources = sources
        self.terminals = terminals
        self.mu = None if mu is None else int(mu)
        self._fwd = reach

    def _linkage(self, X, trace: bool):
        X = list(X)
        nodes = [self.terminals[x] for x in X]
        back = _reach(self.n_nodes, self.arcs, nodes, reverse=True)
        fwd = self._fwd
        arcs = [(u, v) for u, v in self.arcs if u in fwd and v in back]
        N = self.n_nodes
        # v_in = v, v_out = N + v, super source 2N, sink 2N + 1
        F = _Flow(2 * N + 2)
        sig, T = 2 * N, 2 * N + 1
        src_arc = {}
        for s in self.sources:
            if s in back:
                src_arc[s] = F.add_arc(sig, s, 1)
        split = {}
        for v in sorted(fwd & back):
            split[v] = F.add_arc(v, N + v, 1)
        arc_id = {}
        for u, v in arcs:
            arc_id[(u, v)] = F.add_arc(N + u, v, 1)
        for x, t in zip(X, nodes):
            if t not in split:
                return None
            F.add_arc(N + t, T, 1)
            if F.augment(sig, T) == 0:
                return None
        if not trace:
            return True
        into = {}
        for (u, v), e in arc_id.items():
            if F.flow_on(e):
                into[v] = u
        paths = {}
        for x, t in zip(X, nodes):
            path = [t]
            v = t
            while not (v in src_arc and F.flow_on(src_arc[v])):
                v = into[v]
                path.append(v)
            paths[x] = tuple(reversed(path))
        return paths

    def indep(self, S) -> bool:
        return self._linkage(S, trace=False) is not None

    def canonical_path_system(self, X) -> dict:
        """``{x: (source, ..., terminal node)}``, node-disjoint."""
        paths = self._linkage(self.order.sort(X), trace=True)
        if paths is None:
            raise ValueError("set is dependent; not linked to the sources")
        return paths

    def to_dict(self) -> dict:
        return {"family": self.family, "n": self.n, "n_nodes": self.n_nodes,
                "digraph_arcs": [list(a) for a in self.arcs], "sources": list(self.sources),
                "terminals": list(self.terminals), "mu": self.mu, "order": list(self.order.ranking)}


def canonical_path_system(G: GammoidMatroid, X) -> dict:
    return G.canonical_path_system(X)


class ArcCapacityGammoid(OrderedMatroid):
    """Single source, capacitated arcs; ``X`` is independent iff a flow sends
    one unit to every terminal of ``X``.

    ``positions`` gives the left-to-right label (1..n) of each terminal in a
    fixed semiplanar drawing; it is trusted, not validated.
    """

    family = "semiplanar"

    def __init__(self, n_nodes: int, arcs: Sequence[Sequence[int]], caps: Sequence[int], source: int,
                 terminals: Sequence[int], positions: Sequence[int] | None = None, order=None):
        arcs = [(int(u), int(v)) for u, v in arcs]
        caps = [int(c) for c in caps]
        if len(caps) != len(arcs):
            raise ValueError("one capacity per arc is required")
        if any(c < 1 for c in caps):
            raise ValueError("arc capacities must be at least 1")
        terminals = [int(t) for t in terminals]
        if len(set(terminals)) != len(terminals):
            raise ValueError("terminals must be distinct nodes")
        reach = _reach(n_nodes, arcs, [source])
        lost = [i for i, t in enumerate(terminals) if t not in reach]
        if lost:
            raise ValueError(f"terminals {lost} are not reachable from the source")
        n = len(terminals)
        super().__init__(n, order=order)
        if positions is None:
            positions = list(range(1, n + 1))
        positions = [int(p) for p in positions]
        if sorted(positions) != list(range(1, n + 1)):
            raise ValueError("positions must be a permutation of 1..n")
        self.n_nodes = int(n_nodes)
        self.arcs = arcs
        self.arc_caps = caps
        self.source = int(source)
        self.terminals = terminals
        self.label = positions
        self.element_at = [None] * (n + 2)
        for e, p in enumerate(positions):
            self.element_at[p] = e

    def indep(self, S) -> bool:
        S = list(S)
        if not S:
            return True
        N = self.n_nodes
        F = _Flow(N + 1)
        T = N
        for (u, v), c in zip(self.arcs, self.arc_caps):
            F.add_arc(u, v, c)
        for x in S:
            F.add_arc(self.terminals[x], T, 1)
        total = 0
        while total < len(S):
            got = F.augment(self.source, T)
            if got == 0:
                return False
            total += got
        return True

    def positions(self, X) -> list:
        lab = self.label
        return sorted(lab[e] for e in X)

    def to_dict(self) -> dict:
        return {"family": self.family, "n": self.n, "n_nodes": self.n_nodes,
                "digraph_arcs": [list(a) for a in self.arcs], "caps": list(self.arc_caps),
                "sources": [self.source], "terminals": list(self.terminals),
                "positions": list(self.label), "order": list(self.order.ranking)}


def laminar_as_gammoid(lam) -> ArcCapacityGammoid:
    """The tree drawing of a laminar matroid as an arc-capacity gammoid."""
    nodes = lam._node_sets
    caps = lam._node_caps
    s = len(nodes)
    arcs, arc_caps = [(s, 0)], [caps[0]]
    for i, p in enumerate(lam._parent):
        if p >= 0:
            arcs.append((p, i))
            arc_caps.append(caps[i])
    leaf = {}
    for i, L in enumerate(nodes):
        if len(L) == 1:
            (e,) = L
            leaf[e] = i
    terminals = [leaf[e] for e in range(lam.n)]
    return ArcCapacityGammoid(s + 1, arcs, arc_caps, s, terminals, positions=list(lam.label),
                              order=lam.order)
