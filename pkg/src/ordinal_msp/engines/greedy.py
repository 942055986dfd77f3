"""Greedy-style engines and the offline baseline."""

from __future__ import annotations

from ..core import greedy_opt
from .trial import ArrivalTrial, TraceStep, outcome

__all__ = ["run_improving_greedy", "run_tpa", "run_online_greedy", "run_offline_greedy", "tpa_scales"]


def run_improving_greedy(M, trial: ArrivalTrial, trace: bool = False):
    """After the sample, accept ``r_i`` if it is in ``OPT(R_i)`` and keeps ALG
    independent.  ``extra["considered"]`` counts post-sample elements that were
    in the current optimum."""
    tracker = M.opt_tracker()
    indep = M.indep
    s = trial.s
    alg = []
    considered = 0
    steps = [] if trace else None
    for i, r in enumerate(trial.order, 1):
        entered = tracker.add(r)[0]
        ok = False
        if i > s and entered:
            considered += 1
            ok = indep(alg + [r])
            if ok:
                alg.append(r)
        if trace:
            steps.append(TraceStep(i, r, entered, ok, ok))
    return outcome(M.n, alg, steps, considered=considered)


def tpa_scales(rho: int) -> int:
    """Number of threshold scales: ``ceil(log2 rho) + 1``."""
    if rho < 1:
        raise ValueError("rank must be positive")
    return (rho - 1).bit_length() + 1


def run_tpa(M, weights, trial: ArrivalTrial, rng, rho: int | None = None, tau: int | None = None):
    """Threshold price algorithm.

    ``w*`` is the heaviest non-loop sampled element; ``tau`` is uniform on
    ``0..ceil(log2 rho)`` unless forced; after the sample every element with
    weight at least ``w*/2^tau`` is taken greedily.  No non-loop sampled
    element means nothing is taken.
    """
    if rho is None:
        rho = len(greedy_opt(M))
    k = tpa_scales(rho)
    if tau is None:
        tau = int(rng.integers(0, k))
    elif not 0 <= tau < k:
        raise ValueError(f"tau must lie in 0..{k - 1}")
    w = [float(weights[e]) for e in range(M.n)]
    s = trial.s
    sampled = [r for r in trial.order[:s] if M.indep((r,))]
    if not sampled:
        return outcome(M.n, [], tau=tau, threshold=None)
    threshold = max(w[r] for r in sampled) / 2.0 ** tau
    alg = []
    for r in trial.order[s:]:
        if len(alg) == rho:
            break
        if w[r] >= threshold and M.indep(alg + [r]):
            alg.append(r)
    return outcome(M.n, alg, tau=tau, threshold=threshold)


def run_online_greedy(M, trial: ArrivalTrial, trace: bool = False):
    """Take every arriving element that keeps ALG independent (no sample)."""
    alg = []
    steps = [] if trace else None
    for i, r in enumerate(trial.order, 1):
        ok = i > trial.s and M.indep(alg + [r])
        if ok:
            alg.append(r)
        if trace:
            steps.append(TraceStep(i, r, False, ok, ok))
    return outcome(M.n, alg, steps)


def run_offline_greedy(M, trial: ArrivalTrial | None = None):
    """Sees the whole instance and returns ``OPT``."""
    return outcome(M.n, greedy_opt(M))
