"""Exhaustive check of the k-forbidden property on small instances.

For an engine with forbidden sets ``F(X, Y, r*)`` the check replays every
arrival order and every sample size ``s``.  Whenever ``r_t`` is in
``OPT(R_t)`` and no ``r_j`` with ``s < j < t`` lies in ``F(R_j, R_t, r_t)``,
the replay must have selected ``r_t``.  Each forbidden set must also have at
most ``k`` elements, and every output must be independent and avoid the
sample.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..core import greedy_opt
from ..zoo.graphic import canonical_orientation
from ..zoo.laminar import _pre_nex_sorted
from ..zoo.transversal import _kuhn
from .forbidden import _drive
from .trial import ArrivalTrial

__all__ = ["Counterexample", "ForbiddenReport", "FORBIDDEN_SETS", "MUTANTS", "forbidden_set",
           "verify_forbidden_property"]

MAX_EXHAUSTIVE = 8


def _opt(M, X):
    return greedy_opt(M, X)


def _f_classical(M, X, Y, r):
    return set(_opt(M, X))


def _f_transversal(M, X, Y, r):
    OX = _opt(M, X)
    target = M.canonical_matching(_opt(M, Y))[r]
    mx = M.canonical_matching(OX)
    return {v for v in OX if mx[v] == target}


def _f_gammoid(M, X, Y, r):
    OX = _opt(M, X)
    mine = set(M.canonical_path_system(_opt(M, Y))[r])
    px = M.canonical_path_system(OX)
    return {v for v in OX if mine.intersection(px[v])}


def _f_packing(M, X, Y, r):
    OX = _opt(M, X)
    mine = set(M.canonical_packing(_opt(M, Y))[r]) - {M.terminals[r]}
    qx = M.canonical_packing(OX)
    return {v for v in OX if mine.intersection(qx[v])}


def _f_forest(M, X, Y, r):
    OX = _opt(M, X)
    ends = set(M.edge(r, _opt(M, Y)))
    arcs = canonical_orientation(M.forest(OX))
    return {f for f in OX if arcs[f][1] in ends}


def _f_framed(M, X, Y, r):
    OX = _opt(M, X)
    circ = M.support[r]
    pi = M.frame_injection(OX)
    return {f for f in OX if pi[f] in circ}


def _labels_to_elements(M, labels):
    n = M.n
    return {M.element_at[a] for a in labels if 1 <= a <= n}


def _f_semiplanar(M, X, Y, r):
    J = M.positions(_opt(M, X))
    y = M.label[r]
    n = M.n
    pre, nex = _pre_nex_sorted(J, y, n)
    far_pre = _pre_nex_sorted(J, pre, n)[0] if pre >= 1 else 0
    far_nex = _pre_nex_sorted(J, nex, n)[1] if nex <= n else n + 1
    return _labels_to_elements(M, (far_pre, pre, nex, far_nex))


def _f_laminar(M, X, Y, r):
    J = M.positions(_opt(M, X))
    if not J:
        return set()
    n = M.n
    b = M.representative_label(J, M.label[r])
    a, c = _pre_nex_sorted(J, b, n)
    return _labels_to_elements(M, (a, b, c))


FORBIDDEN_SETS = {
    "classical": _f_classical,
    "transversal": _f_transversal,
    "gammoid": _f_gammoid,
    "packing": _f_packing,
    "graphic": _f_forest,
    "hypergraphic": _f_forest,
    "framed": _f_framed,
    "semiplanar": _f_semiplanar,
    "laminar": _f_laminar,
}


def forbidden_set(engine: str, M, X, Y, r) -> frozenset:
    """``F(X, Y, r)`` for the named engine; ``X`` and ``Y`` are arrival prefixes."""
    X, Y = frozenset(X), frozenset(Y)
    if r not in Y or r in X or not X <= Y:
        raise ValueError("need r in Y and X a subset of Y - r")
    if r not in _opt(M, Y):
        raise ValueError("r must belong to OPT(Y)")
    return frozenset(FORBIDDEN_SETS[engine](M, X, Y, r))


@dataclass(frozen=True)
class Counterexample:
    order: tuple
    s: int
    t: int
    kind: str
    detail: str = ""

    def line(self) -> str:
        return f"{self.kind}: order={list(self.order)} s={self.s} t={self.t} {self.detail}".rstrip()


@dataclass
class ForbiddenReport:
    engine: str
    n: int
    k: int
    orders: int = 0
    replays: int = 0
    implications: int = 0
    max_size: int = 0
    violations: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def summary(self) -> str:
        head = "ok" if self.ok else f"FAIL ({self.violations} violations)"
        return (f"{self.engine}: n={self.n} k={self.k} max|F|={self.max_size} orders={self.orders} "
                f"replays={self.replays} implications={self.implications} {head}")


def verify_forbidden_property(engine: str, M, k: int, run=None, keep: int = 10) -> ForbiddenReport:
    """Replay ``run(M, trial)`` over all ``n!`` orders and all ``s``.

    ``run`` defaults to the registered engine; pass another callable to test a
    modified engine against the same forbidden sets.
    """
    if engine not in FORBIDDEN_SETS:
        raise ValueError(f"no forbidden sets known for engine {engine!r}")
    n = M.n
    if n > MAX_EXHAUSTIVE:
        raise ValueError(f"exhaustive replay limited to n <= {MAX_EXHAUSTIVE}, got {n}")
    if run is None:
        from .registry import ENGINES
        run = ENGINES[engine].replay
    fset = FORBIDDEN_SETS[engine]
    memo = {}
    rep = ForbiddenReport(engine, n, k)

    def flag(kind, order, s, t, detail=""):
        rep.violations += 1
        if len(rep.counterexamples) < keep:
            rep.counterexamples.append(Counterexample(tuple(order), s, t, kind, detail))

    for order in itertools.permutations(range(n)):
        rep.orders += 1
        tracker = M.opt_tracker()
        prefixes = []
        acc = []
        in_opt = [False] * (n + 1)
        for t, r in enumerate(order, 1):
            in_opt[t] = tracker.add(r)[0]
            acc.append(r)
            prefixes.append(frozenset(acc))
        last_bad = [0] * (n + 1)
        for t in range(1, n + 1):
            if not in_opt[t]:
                continue
            Y, r = prefixes[t - 1], order[t - 1]
            for j in range(1, t):
                key = (prefixes[j - 1], Y, r)
                F = memo.get(key)
                if F is None:
                    F = memo[key] = frozenset(fset(M, prefixes[j - 1], Y, r))
                if len(F) > rep.max_size:
                    rep.max_size = len(F)
                if len(F) > k:
                    flag("size", order, -1, t, f"j={j} |F|={len(F)} F={sorted(F)}")
                if order[j - 1] in F:
                    last_bad[t] = j
        for s in range(n + 1):
            rep.replays += 1
            got = run(M, ArrivalTrial(order, s)).selected
            if not M.indep(got):
                flag("dependent", order, s, 0, f"ALG={sorted(got)}")
            early = [e for e in order[:s] if e in got]
            if early:
                flag("sampled", order, s, 0, f"selected from sample {early}")
            for t in range(s + 1, n + 1):
                if in_opt[t] and last_bad[t] <= s:
                    rep.implications += 1
                    if order[t - 1] not in got:
                        flag("implication", order, s, t, f"r_t={order[t - 1]} ALG={sorted(got)}")
    return rep


def _history_matching(T, trial):
    """Transversal engine whose matching depends on the arrival history:
    augmenting paths are tried in arrival order instead of value order."""
    covered = set()
    order = trial.order

    def check(r, opt):
        m = _kuhn(T.adj, [e for e in order if e in opt], T.n_left)
        if m[r] in covered:
            return False
        covered.add(m[r])
        return True

    return _drive(T, trial, check, False)


MUTANTS = {"history-matching": ("transversal", _history_matching)}
