"""Monte Carlo estimation of the four competitiveness measures."""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..core import greedy_opt
from ..engines.registry import get_engine
from ..engines.trial import trial_rng
from .bounds import engine_bound

__all__ = ["CompetitivenessReport", "MeasureEstimate", "TrialPlan", "WEIGHT_PRESETS", "aggregate_trials",
           "default_weights", "dominance_check", "estimate_measures", "MIN_SUCCESSES", "Z95"]

Z95 = 1.959963984540054
MIN_SUCCESSES = 30
CHUNK = 512
MEASURES = ("probability", "ordinal", "intersection", "utility")


def _weights_by_rank(n: int, preset: str) -> list:
    if preset == "linear":
        return [float(n - k + 1) for k in range(1, n + 1)]
    if preset == "harmonic":
        return [1.0 / k for k in range(1, n + 1)]
    if preset == "geometric":
        return [0.5 ** (k - 1) for k in range(1, n + 1)]
    raise ValueError(f"unknown weight preset {preset!r}")


WEIGHT_PRESETS = ("linear", "harmonic", "geometric")


def default_weights(M, preset: str = "linear") -> list:
    """Weights indexed by element id, strictly decreasing along the value order:
    ``n-k+1`` (linear), ``1/k`` (harmonic) or ``2^-(k-1)`` (geometric) for ``r^k``."""
    by_rank = _weights_by_rank(M.n, preset)
    w = [0.0] * M.n
    for k in range(1, M.n + 1):
        w[M.order.element(k)] = by_rank[k - 1]
    return w


@dataclass(frozen=True)
class TrialPlan:
    instance: object
    engine: str
    params: dict = field(default_factory=dict)
    trials: int = 1000
    seed: int = 0
    width: int = 1
    weights: tuple | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("a plan needs at least one trial")
        if self.width < 1:
            raise ValueError("parallelism width must be at least 1")
        spec = get_engine(self.engine)
        if not spec.supports(self.instance):
            raise ValueError(f"engine {self.engine!r} does not support family {self.instance.family!r}")


@dataclass
class MeasureEstimate:
    estimate: float
    ci95: float
    bound: float | None
    trials: int
    flag: str = ""

    def passes(self, slack: float = 3.0) -> bool | None:
        """``estimate - slack * se <= bound``; ``None`` without a bound."""
        if self.bound is None:
            return None
        se = self.ci95 / Z95 if math.isfinite(self.ci95) else math.inf
        return self.estimate - slack * se <= self.bound


@dataclass
class CompetitivenessReport:
    engine: str
    family: str
    n: int
    rank: int
    trials: int
    seed: int
    param_p: float | None
    measures: dict
    freq: list
    curve: list
    opt_curve: list
    opt: list
    extra: dict = field(default_factory=dict)

    def min_opt_frequency(self) -> float:
        return min(self.freq[e] for e in self.opt) if self.opt else 1.0

    def to_dict(self) -> dict:
        return {"engine": self.engine, "family": self.family, "n": self.n, "rank": self.rank,
                "trials": self.trials, "seed": self.seed, "param_p": self.param_p,
                "measures": {k: {"estimate": v.estimate, "ci95": v.ci95, "bound": v.bound,
                                 "trials": v.trials, "flag": v.flag} for k, v in self.measures.items()},
                "frequencies": list(self.freq), "ordinal_curve": {"alg": list(self.curve), "opt": list(self.opt_curve)},
                "opt": sorted(self.opt), "extra": dict(self.extra)}


def _run_chunk(args):
    """Sums over trials ``lo..hi-1``: counts per element, per-rank cumulative
    sums and squares, intersection and utility moments."""
    M, engine, params, seed, lo, hi, w_rank, opt_mask_rank = args
    spec = get_engine(engine)
    n = M.n
    rank_of = np.asarray(M.order.key, dtype=np.int64)
    counts = np.zeros(n, dtype=np.int64)
    cum = np.zeros(n, dtype=np.int64)
    cum_sq = np.zeros(n, dtype=np.int64)
    inter = inter_sq = 0
    util = util_sq = 0.0
    sizes_max = 0
    for idx in range(lo, hi):
        rng = trial_rng(seed, idx)
        trial = spec.trial(M, rng, params)
        sel = spec.run(M, trial, rng, params).selected
        flags = np.zeros(n, dtype=np.int64)
        if sel:
            flags[rank_of[list(sel)]] = 1
        c = np.cumsum(flags)
        cum += c
        cum_sq += c * c
        x = int(flags[opt_mask_rank].sum())
        inter += x
        inter_sq += x * x
        u = float(flags @ w_rank)
        util += u
        util_sq += u * u
        sizes_max = max(sizes_max, len(sel))
        counts += flags
    return counts, cum, cum_sq, inter, inter_sq, util, util_sq, sizes_max


def aggregate_trials(M, engine, params, seed, trials, width, w_rank, opt_mask_rank):
    """Chunked trial sums; chunk boundaries do not depend on ``width`` and
    chunks are added in index order, so the totals are width-independent."""
    jobs = [(M, engine, params, seed, lo, min(trials, lo + CHUNK), w_rank, opt_mask_rank)
            for lo in range(0, trials, CHUNK)]
    if width > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=width) as pool:
            parts = list(pool.map(_run_chunk, jobs))
    else:
        parts = [_run_chunk(j) for j in jobs]
    total = list(parts[0])
    for part in parts[1:]:
        for i, v in enumerate(part):
            total[i] = max(total[i], v) if i == 7 else total[i] + v
    return total


def _ratio_ci(num: float, mean: float, var: float, T: int) -> tuple:
    num, mean, var = float(num), float(mean), float(var)
    if mean <= 0:
        return math.inf, math.inf
    se_mean = math.sqrt(max(var, 0.0) / T)
    return num / mean, Z95 * num * se_mean / (mean * mean)


def estimate_measures(plan: TrialPlan) -> CompetitivenessReport:
    M = plan.instance
    spec = get_engine(plan.engine)
    n, T = M.n, plan.trials
    opt = greedy_opt(M)
    w = list(plan.weights) if plan.weights is not None else default_weights(M)
    params = dict(plan.params)
    params.setdefault("weights", tuple(w))
    order = M.order
    w_rank = np.array([w[order.element(k)] for k in range(1, n + 1)], dtype=float)
    opt_mask_rank = np.array([order.element(k) in opt for k in range(1, n + 1)], dtype=bool)
    counts, cum, cum_sq, inter, inter_sq, util, util_sq, size_max = aggregate_trials(
        M, plan.engine, params, plan.seed, T, plan.width, w_rank, opt_mask_rank)
    freq_rank = counts / T
    freq = [0.0] * n
    for k in range(n):
        freq[order.element(k + 1)] = float(freq_rank[k])
    opt_curve = np.cumsum(opt_mask_rank).astype(float)
    curve = cum / T
    bound = engine_bound(plan.engine, M)
    out = {}

    # probability: 1 / min frequency over OPT, delta method on the binomial proportion
    if opt:
        opt_ranks = [order.position(e) - 1 for e in opt]
        worst = min(opt_ranks, key=lambda k: (counts[k], k))
        f = float(freq_rank[worst])
        succ = int(counts[worst])
        if f > 0:
            est = 1.0 / f
            ci = Z95 * math.sqrt(f * (1 - f) / T) / (f * f)
        else:
            est, ci = math.inf, math.inf
        out["probability"] = MeasureEstimate(est, ci, bound.get("probability"), T,
                                             "insufficient trials" if succ < MIN_SUCCESSES else "")
    else:
        out["probability"] = MeasureEstimate(1.0, 0.0, bound.get("probability"), T)

    # ordinal: max over k of |OPT ∩ R^k| / E|ALG ∩ R^k|
    best = (1.0, 0.0, None)
    for k in range(n):
        if opt_curve[k] <= 0:
            continue
        mean = curve[k]
        var = cum_sq[k] / T - mean * mean
        r, ci = _ratio_ci(opt_curve[k], mean, var, T)
        if best[2] is None or r > best[0]:
            best = (r, ci, k)
    k_star = best[2]
    succ = int(cum[k_star]) if k_star is not None else T
    out["ordinal"] = MeasureEstimate(best[0], best[1], bound.get("ordinal"), T,
                                     "insufficient trials" if succ < MIN_SUCCESSES else "")

    mean = inter / T
    r, ci = _ratio_ci(len(opt), mean, inter_sq / T - mean * mean, T)
    out["intersection"] = MeasureEstimate(r, ci, bound.get("intersection"), T,
                                          "insufficient trials" if inter < MIN_SUCCESSES else "")
    mean = util / T
    w_opt = float(sum(w[e] for e in opt))
    r, ci = _ratio_ci(w_opt, mean, util_sq / T - mean * mean, T)
    out["utility"] = MeasureEstimate(r, ci, bound.get("utility"), T,
                                     "insufficient trials" if int(counts.sum()) < MIN_SUCCESSES else "")
    return CompetitivenessReport(plan.engine, M.family, n, len(opt), T, plan.seed, spec.param_p(M, plan.params),
                                 out, freq, curve.tolist(), opt_curve.tolist(), sorted(opt),
                                 {"max_selected": int(size_max), "mean_intersection": inter / T})


def dominance_check(report: CompetitivenessReport, slack: float = 3.0) -> bool | None:
    """Probability dominates the other measures and ordinal dominates utility,
    each up to ``slack`` standard errors.  ``None`` (with a warning) when the
    report has a single trial."""
    if report.trials < 2:
        warnings.warn("dominance check skipped: a single trial gives no error estimate", RuntimeWarning)
        return None
    m = report.measures

    def geq(a, b):
        A, B = m[a], m[b]
        if math.isinf(A.estimate):
            return True
        if math.isinf(B.estimate):
            return False
        se = math.hypot(A.ci95, B.ci95) / Z95
        return A.estimate + slack * se >= B.estimate

    return all(geq("probability", o) for o in ("ordinal", "intersection", "utility")) and geq("ordinal", "utility")
