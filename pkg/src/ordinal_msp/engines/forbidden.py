"""Online algorithms with small forbidden sets.

Each engine samples the first ``s`` arrivals, keeps ``OPT(R_i)`` up to date
and, after the sample, accepts an element only if it belongs to the current
optimum and its canonical witness does not clash with what was already
marked.
"""

from __future__ import annotations


from ..zoo.graphic import canonical_orientation
from ..zoo.laminar import _pre_nex_sorted
from .trial import ArrivalTrial, TraceStep, outcome

__all__ = [
    "run_classical_secretary", "run_transversal", "run_gammoid", "run_packing", "run_graphic",
    "run_hypergraphic", "run_framed", "run_semiplanar", "run_laminar",
]


def _drive(M, trial: ArrivalTrial, check, trace: bool, **extra):
    """Shared loop; ``check(r, opt)`` is called only for post-sample elements of
    the current optimum and must update the marking state when it accepts."""
    if trial.n != M.n:
        raise ValueError(f"trial has {trial.n} elements, matroid has {M.n}")
    tracker = M.opt_tracker()
    add = tracker.add
    s = trial.s
    alg = []
    steps = [] if trace else None
    for i, r in enumerate(trial.order, 1):
        entered = add(r)[0]
        if i <= s:
            if trace:
                steps.append(TraceStep(i, r, entered, False, False))
            continue
        ok = bool(entered and check(r, tracker.members))
        if ok:
            alg.append(r)
        if trace:
            steps.append(TraceStep(i, r, entered, ok, ok))
    return outcome(M.n, alg, steps, **extra)


def run_classical_secretary(trial: ArrivalTrial, order=None, trace: bool = False):
    """Select the first post-sample element better than every sampled one."""
    key = order.key if order is not None else list(range(trial.n))
    best = min((key[r] for r in trial.order[:trial.s]), default=None)
    steps = [] if trace else None
    chosen = []
    for i, r in enumerate(trial.order, 1):
        record = best is None or key[r] < best
        ok = i > trial.s and not chosen and record
        if ok:
            chosen.append(r)
        if trace:
            steps.append(TraceStep(i, r, record, ok, ok))
        if record:
            best = key[r]
    return outcome(trial.n, chosen, steps)


def run_transversal(T, trial: ArrivalTrial, trace: bool = False):
    """Accept ``r_i`` if its partner in ``M_{OPT(R_i)}`` is still uncovered."""
    covered = set()

    def check(r, opt):
        l = T.canonical_matching(opt)[r]
        if l in covered:
            return False
        covered.add(l)
        return True

    return _drive(T, trial, check, trace, matched=covered)


def run_gammoid(G, trial: ArrivalTrial, trace: bool = False):
    """Accept ``r_i`` if its canonical path avoids all previously chosen paths."""
    used = set()
    chosen = []

    def check(r, opt):
        path = G.canonical_path_system(opt)[r]
        if used.intersection(path):
            return False
        used.update(path)
        chosen.append(path)
        return True

    return _drive(G, trial, check, trace, paths=chosen)


def run_packing(H, trial: ArrivalTrial, trace: bool = False):
    """Matching matroids: accept if already covered, or if the canonical
    matching edge of ``r_i`` is vertex-disjoint from the chosen packing."""
    covered = set()
    packing = []

    def check(r, opt):
        if H.terminals[r] in covered:
            return True
        edge = H.canonical_packing(opt)[r]
        if covered.intersection(edge):
            return False
        covered.update(edge)
        packing.append(edge)
        return True

    return _drive(H, trial, check, trace, packing=packing)


def _run_forest(M, trial, trace):
    indeg = {}
    arcs = []

    def check(r, opt):
        u, v = canonical_orientation(M.forest(opt))[r]
        if indeg.get(u, 0) or indeg.get(v, 0):
            return False
        indeg[v] = 1
        arcs.append((u, v))
        return True

    return _drive(M, trial, check, trace, arcs=arcs)


def run_graphic(G, trial: ArrivalTrial, trace: bool = False):
    """Accept ``r_i`` if both endpoints of its canonical arc have in-degree 0
    in the chosen arc set."""
    return _run_forest(G, trial, trace)


def run_hypergraphic(H, trial: ArrivalTrial, trace: bool = False):
    """As :func:`run_graphic`, on the canonical edge assignment of the optimum."""
    return _run_forest(H, trial, trace)


def run_framed(L, trial: ArrivalTrial, trace: bool = False):
    """Accept ``r_i`` if no frame element of ``C(B, r_i)`` is marked; then mark
    ``pi_{OPT(R_i)}(r_i)``."""
    marked = set()
    support = L.support

    def check(r, opt):
        if marked.intersection(support[r]):
            return False
        marked.add(L.frame_injection(opt)[r])
        return True

    return _drive(L, trial, check, trace, marked=marked)


def _run_drawn(M, trial, trace, use_pair: bool):
    """Semiplanar (neighbour pair) and laminar (representative) variants."""
    if trial.n != M.n:
        raise ValueError(f"trial has {trial.n} elements, matroid has {M.n}")
    s = trial.s
    if s == 0:
        steps = None
        if trace:
            steps = [TraceStep(1, trial.order[0], True, True, True)] if trial.n else []
        return outcome(M.n, trial.order[:1], steps, blocked=set())
    tracker = M.opt_tracker()
    add = tracker.add
    label = M.label
    n = M.n
    blocked = set()
    alg = []
    steps = [] if trace else None
    J = None
    for i, r in enumerate(trial.order, 1):
        entered = add(r)[0]
        if i <= s:
            if trace:
                steps.append(TraceStep(i, r, entered, False, False))
            if i == s:
                J = sorted(label[e] for e in tracker.members)
            continue
        ok = False
        if entered:
            y = label[r]
            if use_pair:
                pre, nex = _pre_nex_sorted(J, y, n)
                if pre not in blocked and nex not in blocked:
                    blocked.add(pre)
                    blocked.add(nex)
                    ok = True
            else:
                if not J:
                    raise ValueError("sample optimum is empty; representatives undefined")
                rep = M.representative_label(J, y)
                if rep not in blocked:
                    blocked.add(rep)
                    ok = True
        if ok:
            alg.append(r)
        if trace:
            steps.append(TraceStep(i, r, entered, ok, ok))
    return outcome(M.n, alg, steps, blocked=blocked)


def run_semiplanar(S, trial: ArrivalTrial, trace: bool = False):
    """Accept ``r_i`` if both its neighbours in ``OPT(R_s)`` are unmarked, then
    mark them.  ``S`` needs ``label`` (left-to-right positions)."""
    return _run_drawn(S, trial, trace, use_pair=True)


def run_laminar(L, trial: ArrivalTrial, trace: bool = False):
    """Accept ``r_i`` if its representative in ``OPT(R_s)`` is unmarked, then mark it."""
    return _run_drawn(L, trial, trace, use_pair=False)
