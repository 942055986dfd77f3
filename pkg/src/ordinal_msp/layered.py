"""Layered-MSP: threshold layers, Feldman-style bucketing and the two
reductions that turn a layered algorithm into an MSP algorithm.

Thresholds are phantom elements living in the key space of the value order
(``key[r]`` is the 0-based rank of ``r``, smaller is better).  A threshold
with key ``c`` sits between the elements with keys below and above ``c``;
element ids used as thresholds simply contribute their own key.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .core import Minor, greedy_opt, span
from .engines.trial import ArrivalTrial, draw_sample_size, outcome

__all__ = ["BucketPlan", "LayerEstimate", "LayeredInstance", "build_buckets", "bucket_count", "coupling_histograms",
           "coupling_procedure", "feldman_alpha", "layer_competitiveness", "ordinal_thresholds", "plus_set",
           "run_feldman_layered", "run_ordinal_reduction", "run_probability_reduction"]


@dataclass(frozen=True)
class LayeredInstance:
    """Base matroid restricted to ``ground`` with sorted threshold keys."""

    matroid: object
    ground: frozenset
    thresholds: tuple

    def __post_init__(self):
        ground = frozenset(int(e) for e in self.ground)
        if not ground <= self.matroid.ground:
            raise ValueError("layered ground set must lie inside the matroid")
        thr = tuple(sorted(self.thresholds))
        if len(set(thr)) != len(thr):
            raise ValueError("threshold keys must be distinct")
        key = self.matroid.order.key
        if any(key[e] in thr for e in ground):
            raise ValueError("thresholds must be disjoint from the ground set")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "thresholds", thr)

    @property
    def k(self) -> int:
        return len(self.thresholds)

    def layer(self, r: int) -> int:
        """``j`` with ``r`` in ``C_j``: the number of thresholds better than ``r``."""
        return bisect_left(self.thresholds, self.matroid.order.key[r])

    def layers(self) -> list:
        out = [set() for _ in range(self.k + 1)]
        for r in self.ground:
            out[self.layer(r)].add(r)
        return [frozenset(c) for c in out]

    def opt(self) -> frozenset:
        return greedy_opt(self.matroid, self.ground)


def feldman_alpha(k: int) -> int:
    """``8 * ceil(log2(k + 1) + 1)``."""
    return 8 * math.ceil(math.log2(k + 1) + 1)


def bucket_count(k: int, tau: int, delta: int) -> int:
    """``ceil((delta + k) / 2^tau)``, but at least one (possibly empty) bucket."""
    return max(1, -(-(delta + k) // (1 << tau)))


def build_buckets(k: int, tau: int, delta: int) -> list:
    """Layer index ranges ``(lo, hi)`` (inclusive, empty when ``lo > hi``) for
    ``B_i``, ``i = 1..bucket_count``:
    ``lo = max(0, 2^tau (i-1) - delta + 1)``, ``hi = min(k, 2^tau i - delta)``.
    ``C_0`` lies in no bucket whenever ``delta = 0``."""
    if k < 0 or tau < 0 or not 0 <= delta < (1 << tau):
        raise ValueError("need k >= 0, tau >= 0 and 0 <= delta < 2^tau")
    w = 1 << tau
    return [(max(0, w * (i - 1) - delta + 1), min(k, w * i - delta))
            for i in range(1, bucket_count(k, tau, delta) + 1)]


@dataclass
class BucketPlan:
    tau: int
    delta: int
    ranges: list
    parity: int
    bucket_of_layer: dict = field(default_factory=dict)

    @classmethod
    def make(cls, k: int, tau: int, delta: int, parity: int) -> "BucketPlan":
        ranges = build_buckets(k, tau, delta)
        owner = {}
        for i, (lo, hi) in enumerate(ranges, 1):
            for j in range(lo, hi + 1):
                owner[j] = i
        return cls(tau, delta, ranges, parity, owner)

    @classmethod
    def draw(cls, k: int, rng) -> "BucketPlan":
        tau = int(rng.integers(0, math.ceil(math.log2(k + 1)) + 1))
        delta = int(rng.integers(0, 1 << tau))
        parity = int(rng.integers(0, 2))
        return cls.make(k, tau, delta, parity)

    def active(self, i: int) -> bool:
        """Bucket ``i`` is in ``H`` (odd indices for parity 1, even for 0)."""
        return i % 2 == self.parity


def _bucket_matroids(L: LayeredInstance, plan: BucketPlan, F: frozenset) -> dict:
    M = L.matroid
    idx = range(1, len(plan.ranges) + 1)
    members = {i: set() for i in idx}
    for r in L.ground:
        i = plan.bucket_of_layer.get(L.layer(r))
        if i is not None:
            members[i].add(r)
    sampled_from = {}
    acc = set()
    for i in reversed(idx):
        acc |= members[i] & F
        sampled_from[i] = frozenset(acc)
    out = {}
    for i in idx:
        if not plan.active(i):
            continue
        contracted = sampled_from.get(i + 1, frozenset())
        if i == 1:
            N = frozenset(members[i])
        else:
            N = frozenset(members[i]) & span(M, sampled_from[i - 1])
        out[i] = Minor(M, restricted_to=N - contracted, contracted=contracted)
    return out


def run_feldman_layered(L: LayeredInstance, F: Iterable[int], arrival: Sequence[int], rng,
                        plan: BucketPlan | None = None):
    """Feldman et al.'s bucketed greedy.  ``F`` is the visible half-sample and
    ``arrival`` the order of ``ground - F``."""
    F = frozenset(F)
    if not F <= L.ground:
        raise ValueError("the sample must lie in the layered ground set")
    if sorted(arrival) != sorted(L.ground - F):
        raise ValueError("arrival must be an ordering of the non-sampled ground set")
    if plan is None:
        plan = BucketPlan.draw(L.k, rng)
    mats = _bucket_matroids(L, plan, F)
    T = {i: [] for i in mats}
    for r in arrival:
        i = plan.bucket_of_layer.get(L.layer(r))
        Mi = mats.get(i)
        if Mi is None or r not in Mi.ground:
            continue
        if Mi.indep(T[i] + [r]):
            T[i].append(r)
    alg = [r for i in sorted(T) for r in T[i]]
    return outcome(L.matroid.n, alg, tau=plan.tau, delta=plan.delta, parity=plan.parity,
                   buckets={i: tuple(v) for i, v in T.items()})


LayeredEngine = Callable[[LayeredInstance, frozenset, Sequence[int], object], object]


def ordinal_thresholds(opt_sorted: Sequence[int]) -> list:
    """``s(1), s(2), s(4), ..., s(2^(k-1))`` with ``k = floor(log2 l) + 1``; empty for ``l = 0``."""
    ell = len(opt_sorted)
    if ell == 0:
        return []
    k = ell.bit_length()
    return [opt_sorted[(1 << j) - 1] for j in range(k)]


def _split(M, trial: ArrivalTrial, rng):
    s = trial.s
    t = draw_sample_size(M.n - s, 0.5, rng)
    order = trial.order
    return order[:s], order[s:s + t], order[s + t:]


def run_ordinal_reduction(M, trial: ArrivalTrial, rng, layered: LayeredEngine = run_feldman_layered):
    """Thresholds from the sample optimum at doubling ranks; the layered engine
    runs on ``M`` restricted to the non-sample, with the next ``t ~ Bin(n-s, 1/2)``
    arrivals as its visible half."""
    sample, F, rest = _split(M, trial, rng)
    key = M.order.key
    opt_s = sorted(greedy_opt(M, sample), key=key.__getitem__)
    C = ordinal_thresholds(opt_s)
    L = LayeredInstance(M, frozenset(trial.order[trial.s:]), tuple(key[c] for c in C))
    res = layered(L, frozenset(F), list(rest), rng)
    res.extra["thresholds"] = tuple(C)
    return res


def plus_set(M, sample: Iterable[int]) -> frozenset:
    """``{r not in sample : r in OPT(sample + r)}``."""
    sample = frozenset(sample)
    base = greedy_opt(M, sample)
    key = M.order.key
    out = set()
    for r in M.ground - sample:
        better = frozenset(b for b in base if key[b] < key[r])
        if M.indep(better | {r}):
            out.add(r)
    return frozenset(out)


def run_probability_reduction(M, trial: ArrivalTrial, rng, layered: LayeredEngine = run_feldman_layered):
    """All of ``OPT(R_s)`` as thresholds; the layered engine runs on ``R_s^+``."""
    sample, F, rest = _split(M, trial, rng)
    key = M.order.key
    opt_s = greedy_opt(M, sample)
    plus = plus_set(M, sample)
    L = LayeredInstance(M, plus, tuple(key[c] for c in opt_s))
    res = layered(L, frozenset(F) & plus, [r for r in rest if r in plus], rng)
    res.extra["plus"] = plus
    return res


def coupling_procedure(M, coins: Sequence[int]) -> tuple:
    """Scan ``r^1, r^2, ...``; an element improving on ``V`` goes to ``V`` on
    coin 0 and to ``W`` on coin 1.  ``coins[i-1]`` is the coin of ``r^i``."""
    n = M.n
    if len(coins) != n:
        raise ValueError("one coin per element is required")
    V, W = set(), set()
    for i in range(1, n + 1):
        r = M.order.element(i)
        if M.indep(V | {r}):
            if coins[i - 1] == 0:
                V.add(r)
            else:
                W.add(r)
    return frozenset(V), frozenset(W)


@dataclass(frozen=True)
class LayerEstimate:
    layer: int
    opt_count: int
    mean: float
    se: float

    def holds(self, alpha: float, slack: float = 3.0) -> bool:
        """``E|ALG & C_j| >= |OPT & C_j| / alpha`` up to ``slack`` standard errors."""
        return self.mean + slack * self.se >= self.opt_count / alpha


def layer_competitiveness(L: LayeredInstance, trials: int, seed: int = 0, layered: LayeredEngine = run_feldman_layered
                          ) -> list:
    """Monte Carlo ``E|ALG & C_j|`` per layer, with ``F`` holding each ground
    element independently with probability 1/2 and the rest in random order."""
    import numpy as np
    from .engines.trial import trial_rng

    ground = sorted(L.ground)
    layer_of = {r: L.layer(r) for r in ground}
    opt = L.opt()
    k = L.k
    s1 = np.zeros(k + 1)
    s2 = np.zeros(k + 1)
    for idx in range(trials):
        rng = trial_rng(seed, idx)
        coins = rng.random(len(ground)) < 0.5
        F = frozenset(r for r, c in zip(ground, coins) if c)
        rest = [r for r, c in zip(ground, coins) if not c]
        arrival = [rest[i] for i in rng.permutation(len(rest))]
        res = layered(L, F, arrival, rng)
        if not L.matroid.indep(res.selected):
            raise AssertionError(f"layered engine returned a dependent set {sorted(res.selected)}")
        c = np.zeros(k + 1)
        for r in res.selected:
            c[layer_of[r]] += 1
        s1 += c
        s2 += c * c
    mean = s1 / trials
    var = np.maximum(s2 / trials - mean * mean, 0.0)
    se = np.sqrt(var / trials)
    counts = [0] * (k + 1)
    for r in opt:
        counts[layer_of[r]] += 1
    return [LayerEstimate(j, counts[j], float(mean[j]), float(se[j])) for j in range(k + 1)]


def coupling_histograms(M) -> tuple:
    """Exact laws of ``(V, W)`` over all ``2^n`` coin patterns and of
    ``(OPT(R_s), R_s^+)`` over all arrival orders and ``s ~ Bin(n, 1/2)``,
    as dicts from pairs of frozensets to ``Fraction`` probabilities."""
    import itertools
    from fractions import Fraction

    n = M.n
    coupled = {}
    w = Fraction(1, 2 ** n)
    for coins in itertools.product((0, 1), repeat=n):
        key = coupling_procedure(M, coins)
        coupled[key] = coupled.get(key, 0) + w
    sampled = {}
    per_order = Fraction(1, math.factorial(n))
    cache = {}
    for order in itertools.permutations(range(n)):
        for s in range(n + 1):
            R_s = frozenset(order[:s])
            key = cache.get(R_s)
            if key is None:
                key = cache[R_s] = (greedy_opt(M, R_s), plus_set(M, R_s))
            p = per_order * Fraction(math.comb(n, s), 2 ** n)
            sampled[key] = sampled.get(key, 0) + p
    return coupled, sampled
