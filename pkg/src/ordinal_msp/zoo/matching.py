"""Matching matroids: terminal vertices coverable by a matching of the host graph."""

from __future__ import annotations

from typing import Sequence

import networkx as nx

from ..core import OrderedMatroid


class MatchingMatroid(OrderedMatroid):
    """Element ``i`` is the vertex ``terminals[i]`` of the host graph.

    The canonical packing of ``X`` is the maximum-weight matching where an
    edge weighs the number of its endpoints in ``X``; the graph is always
    built from sorted vertex and edge lists, so the result depends on ``X``
    alone.
    """

    family = "matching"

    def __init__(self, n_vertices: int, edges: Sequence[Sequence[int]], terminals: Sequence[int], order=None):
        edges = sorted({tuple(sorted((int(u), int(v)))) for u, v in edges})
        for u, v in edges:
            if u == v or not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise ValueError(f"edge ({u}, {v}) is not a proper edge on 0..{n_vertices - 1}")
        terminals = [int(t) for t in terminals]
        if len(set(terminals)) != len(terminals) or not all(0 <= t < n_vertices for t in terminals):
            raise ValueError("terminals must be distinct vertices")
        super().__init__(len(terminals), order=order)
        self.n_vertices = int(n_vertices)
        self.edges = edges
        self.terminals = terminals
        self._cache: dict = {}

    def _reset_order_caches(self):
        self._cache = {}

    def _matching(self, X):
        X = frozenset(X)
        hit = self._cache.get(X)
        if hit is not None:
            return hit
        want = {self.terminals[x] for x in X}
        G = nx.Graph()
        G.add_nodes_from(range(self.n_vertices))
        for u, v in self.edges:
            w = (u in want) + (v in want)
            if w:
                G.add_edge(u, v, weight=w)
        mate = {}
        for u, v in nx.max_weight_matching(G):
            mate[u] = v
            mate[v] = u
        covered = sum(1 for t in want if t in mate)
        result = (covered == len(want), mate)
        if len(self._cache) > 100000:
            self._cache.clear()
        self._cache[X] = result
        return result

    def indep(self, S) -> bool:
        return self._matching(S)[0]

    def canonical_packing(self, X) -> dict:
        """``{x: (u, v)}``: the matching edge covering each terminal of ``X``."""
        ok, mate = self._matching(X)
        if not ok:
            raise ValueError("set is dependent; no covering matching")
        out = {}
        for x in X:
            t = self.terminals[x]
            out[x] = tuple(sorted((t, mate[t])))
        return out

    def to_dict(self) -> dict:
        return {"family": self.family, "n": self.n, "n_vertices": self.n_vertices,
                "edges": [list(e) for e in self.edges], "terminals": list(self.terminals),
                "order": list(self.order.ranking)}
