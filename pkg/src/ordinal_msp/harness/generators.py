"""Instance generators: random families plus the adversarial constructions.

Every random generator takes a numpy ``Generator`` and returns an instance
with a uniformly random value order unless stated otherwise.  The
adversarial instances use the identity order, so element ``i - 1`` is
``r^i``.
"""

from __future__ import annotations

import itertools
from typing import Callable

import numpy as np

from ..zoo import (ArcCapacityGammoid, GammoidMatroid, GraphicMatroid, HypergraphicMatroid, LaminarMatroid,
                   LinearMatroid, MatchingMatroid, PartitionMatroid, TransversalMatroid, UniformMatroid,
                   instance_from_dict, laminar_as_gammoid, load_instance)

__all__ = ["GENERATORS", "GeneratorError", "generate_instance", "partition_mM", "partition_N", "random_bipartite",
           "random_gammoid_dag", "random_graphic", "random_hypergraphic", "random_laminar", "random_matching",
           "random_semiplanar", "random_sparse_matrix", "random_uniform", "tpa_instance", "tpa_weights"]


class GeneratorError(ValueError):
    """Unknown generator name or missing generator parameter."""


def _order(n, rng):
    return [int(x) for x in rng.permutation(n)]


def _random_tree(n_vertices, rng):
    """Edges of a uniformly random recursive tree on a shuffled vertex set."""
    perm = rng.permutation(n_vertices)
    return [tuple(sorted((int(perm[i]), int(perm[rng.integers(0, i)])))) for i in range(1, n_vertices)]


def random_graphic(n_vertices: int, n_edges: int, rng) -> GraphicMatroid:
    """Connected simple graph with ``n_edges`` edges: a random spanning tree
    plus distinct extra pairs drawn uniformly."""
    max_edges = n_vertices * (n_vertices - 1) // 2
    if n_vertices < 2 or not n_vertices - 1 <= n_edges <= max_edges:
        raise ValueError(f"need 2 <= n_vertices and {n_vertices - 1} <= n_edges <= {max_edges}")
    tree = _random_tree(n_vertices, rng)
    used = set(tree)
    rest = [e for e in itertools.combinations(range(n_vertices), 2) if e not in used]
    pick = rng.choice(len(rest), size=n_edges - len(tree), replace=False)
    edges = tree + [rest[i] for i in sorted(pick)]
    edges = [edges[i] for i in rng.permutation(len(edges))]
    return GraphicMatroid(n_vertices, edges, order=_order(n_edges, rng))


def random_hypergraphic(n_vertices: int, n_edges: int, rng, max_size: int = 3) -> HypergraphicMatroid:
    """Hyperedges with 2..``max_size`` distinct vertices each."""
    if n_vertices < 2 or max_size < 2:
        raise ValueError("need at least two vertices and hyperedges of size >= 2")
    top = min(max_size, n_vertices)
    edges = [sorted(int(v) for v in rng.choice(n_vertices, size=int(rng.integers(2, top + 1)), replace=False))
             for _ in range(n_edges)]
    return HypergraphicMatroid(n_vertices, edges, order=_order(n_edges, rng))


def _laminar_sets(n, rng, branching, split_prob):
    sets, caps = [], []
    stack = [[int(e) for e in rng.permutation(n)]]
    while stack:
        seg = stack.pop()
        if len(seg) < 2:
            continue
        parts = min(len(seg), int(rng.integers(2, branching + 1)))
        cuts = sorted(int(c) for c in rng.choice(np.arange(1, len(seg)), size=parts - 1, replace=False))
        for lo, hi in zip([0] + cuts, cuts + [len(seg)]):
            child = seg[lo:hi]
            if len(child) >= 2 and rng.random() < split_prob:
                sets.append(child)
                caps.append(int(rng.integers(1, max(1, len(child) // 2) + 1)))
            stack.append(child)
    return sets, caps


def random_laminar(n: int, rng, branching: int = 3, split_prob: float = 0.7, root_cap: int | None = None
                   ) -> LaminarMatroid:
    """Recursive random splits of a shuffled ground set into 2..``branching``
    contiguous blocks; each block of size ``b >= 2`` becomes a constraint with
    probability ``split_prob`` and a capacity uniform on ``1..max(1, b // 2)``."""
    if n < 1 or branching < 2:
        raise ValueError("need n >= 1 and branching >= 2")
    sets, caps = _laminar_sets(n, rng, branching, split_prob)
    if root_cap is None:
        root_cap = int(rng.integers(max(1, n // 4), max(1, n // 2) + 1))
    sets.append(list(range(n)))
    caps.append(root_cap)
    return LaminarMatroid(n, sets, caps, order=_order(n, rng))


def random_semiplanar(n: int, rng, sibling_prob: float = 0.5, max_cap: int = 2, **laminar_kw
                      ) -> ArcCapacityGammoid:
    """Tree drawing of a random laminar matroid plus arcs between adjacent
    siblings.  Siblings are drawn side by side, so such an arc never crosses
    the drawing and all terminals stay on the bottom line."""
    lam = random_laminar(n, rng, **laminar_kw)
    g = laminar_as_gammoid(lam)
    nodes = lam._node_sets
    children = {}
    for i, p in enumerate(lam._parent):
        if p >= 0:
            children.setdefault(p, []).append(i)
    arcs, caps = list(g.arcs), list(g.arc_caps)
    for p in sorted(children):
        kids = sorted(children[p], key=lambda i: min(nodes[i]))
        for a, b in zip(kids, kids[1:]):
            if rng.random() < sibling_prob:
                arcs.append((a, b) if rng.random() < 0.5 else (b, a))
                caps.append(int(rng.integers(1, max_cap + 1)))
    return ArcCapacityGammoid(g.n_nodes, arcs, caps, g.source, g.terminals, positions=list(lam.label),
                              order=lam.order)


def random_bipartite(n: int, n_left: int, edge_prob: float, rng) -> TransversalMatroid:
    """Right vertices ``0..n-1`` are the elements; each of the ``n * n_left``
    possible edges is present independently."""
    mask = rng.random((n, n_left)) < edge_prob
    adj = [[int(j) for j in np.flatnonzero(row)] for row in mask]
    return TransversalMatroid(n_left, adj, order=_order(n, rng))


def _longest_nodes(n_nodes, arcs, sources):
    """Node count of the longest source-to-node path in a DAG given in topological numbering."""
    best = [0] * n_nodes
    for s in sources:
        best[s] = 1
    out = {}
    for u, v in arcs:
        out.setdefault(u, []).append(v)
    for u in range(n_nodes):
        if best[u]:
            for v in out.get(u, ()):
                best[v] = max(best[v], best[u] + 1)
    return best


def random_gammoid_dag(n: int, n_nodes: int, n_sources: int, arc_prob: float, rng, mu: int | None = None
                       ) -> GammoidMatroid:
    """Random DAG on nodes in topological order ``0..n_nodes-1``; the first
    ``n_sources`` nodes are sources and ``n`` of the others are terminals.

    Every non-source node gets at least one in-arc, so every terminal is
    reachable.  Without a declared ``mu`` the node count of the longest
    source-terminal path is used: node-disjoint paths meet a fixed path in
    distinct nodes, so this bounds the exchangeability.
    """
    if not 1 <= n_sources < n_nodes or n > n_nodes - n_sources:
        raise ValueError("need 1 <= n_sources < n_nodes and n <= n_nodes - n_sources")
    arcs = set()
    for v in range(n_sources, n_nodes):
        ins = [u for u in range(v) if rng.random() < arc_prob]
        if not ins:
            ins = [int(rng.integers(0, v))]
        arcs.update((u, v) for u in ins)
    arcs = sorted(arcs)
    terminals = [int(t) for t in rng.choice(np.arange(n_sources, n_nodes), size=n, replace=False)]
    if mu is None:
        depth = _longest_nodes(n_nodes, arcs, range(n_sources))
        mu = min(n, max(depth[t] for t in terminals)) if terminals else 1
    return GammoidMatroid(n_nodes, arcs, range(n_sources), terminals, mu=mu, order=_order(n, rng))


def random_matching(n: int, n_vertices: int, n_edges: int, rng) -> MatchingMatroid:
    """Random simple graph with ``n`` of its vertices as terminals."""
    pairs = list(itertools.combinations(range(n_vertices), 2))
    if not 0 <= n_edges <= len(pairs) or not 0 <= n <= n_vertices:
        raise ValueError("too many edges or terminals for the vertex count")
    pick = rng.choice(len(pairs), size=n_edges, replace=False)
    terminals = [int(t) for t in rng.choice(n_vertices, size=n, replace=False)]
    return MatchingMatroid(n_vertices, [pairs[i] for i in pick], terminals, order=_order(n, rng))


def random_sparse_matrix(rows: int, cols: int, k: int, rng, field_p: int = 2, exact: bool = True
                         ) -> LinearMatroid:
    """Columns with exactly ``k`` (or, with ``exact=False``, 1..``k``) nonzero
    entries over GF(``field_p``), placed uniformly."""
    if not 1 <= k <= rows:
        raise ValueError("need 1 <= k <= rows")
    mat = np.zeros((rows, cols), dtype=np.int64)
    for j in range(cols):
        size = k if exact else int(rng.integers(1, k + 1))
        support = rng.choice(rows, size=size, replace=False)
        mat[support, j] = rng.integers(1, field_p, size=size)
    return LinearMatroid(mat.tolist(), field_p, k, order=_order(cols, rng))


def random_uniform(n: int, rho: int, rng=None) -> UniformMatroid:
    """Uniform matroid; the order is random when ``rng`` is given, else identity."""
    return UniformMatroid(n, rho, order=None if rng is None else _order(n, rng))


def partition_mM(m: int, M: int) -> PartitionMatroid:
    """``m`` free singletons ``r^1..r^m`` followed by ``M`` blocks of ``m``
    consecutive elements, each block of capacity one.  Rank ``m + M``."""
    if m < 1 or M < 0:
        raise ValueError("need m >= 1 and M >= 0")
    parts = [[i] for i in range(m)] + [list(range(m * (j + 1), m * (j + 2))) for j in range(M)]
    return PartitionMatroid(parts)


def partition_N(m: int) -> PartitionMatroid:
    """Block ``{r^1..r^m}`` of capacity one and singletons ``r^(m+1)..r^(2m-1)``."""
    if m < 1:
        raise ValueError("need m >= 1")
    return PartitionMatroid([list(range(m))] + [[i] for i in range(m, 2 * m - 1)])


def tpa_instance(rho: int) -> LaminarMatroid:
    """``n = 2 rho^3``; at most one of ``r^1..r^(n/2)`` and at most ``rho`` overall."""
    if rho < 1:
        raise ValueError("need rho >= 1")
    n = 2 * rho ** 3
    return LaminarMatroid(n, [list(range(n // 2)), list(range(n))], [1, rho])


def tpa_weights(rho: int, eps: float | None = None) -> list:
    """``w(r^i) = 8 - eps*i`` on the first half, ``7 - eps*i`` on the second; ``eps = 1/n`` by default."""
    n = 2 * rho ** 3
    eps = 1.0 / n if eps is None else float(eps)
    return [(8.0 if i <= n // 2 else 7.0) - eps * i for i in range(1, n + 1)]


def _p(spec, key, default=None, cast=int):
    if key in spec:
        return cast(spec[key])
    if default is None:
        raise KeyError(key)
    return default


GENERATORS: dict = {
    "random_graphic": lambda s, rng: random_graphic(_p(s, "n_vertices"), _p(s, "n_edges"), rng),
    "random_hypergraphic": lambda s, rng: random_hypergraphic(_p(s, "n_vertices"), _p(s, "n_edges"), rng,
                                                              _p(s, "max_size", 3)),
    "random_laminar": lambda s, rng: random_laminar(_p(s, "n"), rng, _p(s, "branching", 3),
                                                    _p(s, "split_prob", 0.7, float), s.get("root_cap")),
    "random_semiplanar": lambda s, rng: random_semiplanar(_p(s, "n"), rng, _p(s, "sibling_prob", 0.5, float),
                                                          _p(s, "max_cap", 2)),
    "random_bipartite": lambda s, rng: random_bipartite(_p(s, "n"), _p(s, "n_left"),
                                                        _p(s, "edge_prob", cast=float), rng),
    "random_gammoid_dag": lambda s, rng: random_gammoid_dag(_p(s, "n"), _p(s, "n_nodes"), _p(s, "n_sources"),
                                                            _p(s, "arc_prob", cast=float), rng, s.get("mu")),
    "random_matching": lambda s, rng: random_matching(_p(s, "n"), _p(s, "n_vertices"), _p(s, "n_edges"), rng),
    "random_sparse_matrix": lambda s, rng: random_sparse_matrix(_p(s, "rows"), _p(s, "cols"), _p(s, "k"), rng,
                                                                _p(s, "field_p", 2), bool(s.get("exact", True))),
    "uniform": lambda s, rng: random_uniform(_p(s, "n"), _p(s, "rank"),
                                             rng if s.get("shuffle", False) else None),
    "partition_mM": lambda s, rng: partition_mM(_p(s, "m"), _p(s, "M")),
    "partition_N": lambda s, rng: partition_N(_p(s, "m")),
    "tpa": lambda s, rng: tpa_instance(_p(s, "rho")),
}


def generate_instance(spec: dict, rng=None):
    """Build an instance from ``{"generator": name, ...params}``, an inline
    instance object (with ``family``) or ``{"file": path}``."""
    if "file" in spec:
        return load_instance(spec["file"])
    if "family" in spec:
        return instance_from_dict(spec)
    name = spec.get("generator")
    make: Callable | None = GENERATORS.get(name)
    if make is None:
        raise GeneratorError(f"unknown generator {name!r}; expected one of {', '.join(sorted(GENERATORS))}")
    if rng is None:
        rng = np.random.default_rng(int(spec.get("seed", 0)))
    try:
        return make(spec, rng)
    except KeyError as exc:
        raise GeneratorError(f"generator {name!r} needs parameter {exc.args[0]!r}") from None
