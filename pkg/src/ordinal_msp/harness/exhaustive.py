"""Exact expectations by enumerating every random choice an engine makes.

:class:`Chooser` stands in for a numpy ``Generator``.  Each call to
``integers``, ``binomial`` or ``permutation`` is a branching point; the
driver replays the engine once per leaf of the choice tree and weights the
leaf by the product of the branch probabilities.

Continuous arrival times cannot be branched on directly.  Engines that only
look at which dyadic interval ``[2^-(j+1), 2^-j)`` each time falls in are
enumerated through :func:`interval_trial`: an interval class per element
plus a uniform order inside each class.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..core import greedy_opt
from ..engines.registry import get_engine
from ..engines.trial import ArrivalTrial

__all__ = ["Chooser", "ExactMeasures", "enumerate_choices", "exhaustive_run", "interval_trial", "MAX_EXHAUSTIVE_N"]

MAX_EXHAUSTIVE_N = 7

_PERMS: dict = {}


def _perms(n: int) -> list:
    if n not in _PERMS:
        _PERMS[n] = list(itertools.permutations(range(n)))
    return _PERMS[n]


class Chooser:
    """Replays a fixed prefix of branch indices, then takes branch 0."""

    def __init__(self, prefix=()):
        self.prefix = list(prefix)
        self.taken = []
        self.prob = 1.0

    def _pick(self, weights):
        pos = len(self.taken)
        idx = self.prefix[pos] if pos < len(self.prefix) else 0
        self.taken.append((idx, len(weights)))
        self.prob *= weights[idx]
        return idx

    def choice_index(self, weights) -> int:
        """Branch on an explicit probability vector."""
        return self._pick(list(weights))

    def integers(self, low, high=None):
        if high is None:
            low, high = 0, low
        m = int(high) - int(low)
        if m < 1:
            raise ValueError("empty range")
        return int(low) + self._pick([1.0 / m] * m)

    def binomial(self, n, p):
        n = int(n)
        if p <= 0.0:
            return 0
        if p >= 1.0:
            return n
        pmf = [math.comb(n, k) * p ** k * (1 - p) ** (n - k) for k in range(n + 1)]
        return self._pick(pmf)

    def permutation(self, n):
        perms = _perms(int(n))
        return np.array(perms[self._pick([1.0 / len(perms)] * len(perms))])

    def random(self, *args, **kwargs):
        raise TypeError("continuous draws cannot be enumerated")


def interval_trial(n: int, depth: int, ch: Chooser) -> ArrivalTrial:
    """Arrival times with the law of i.i.d. uniform times as seen through the
    intervals ``J_0..J_(depth-1)``; class ``depth`` collects every time below
    ``2^-depth``."""
    weights = [0.5 ** (j + 1) for j in range(depth)] + [0.5 ** depth]
    cls = [ch.choice_index(weights) for _ in range(n)]
    perm = [int(e) for e in ch.permutation(n)]
    times = [0.0] * n
    for c in set(cls):
        members = [e for e in perm if cls[e] == c]
        lo, hi = (0.5 ** (c + 1), 0.5 ** c) if c < depth else (0.0, 0.5 ** depth)
        for i, e in enumerate(members):
            times[e] = lo + (hi - lo) * (i + 1) / (len(members) + 1)
    return ArrivalTrial(sorted(range(n), key=times.__getitem__), 0, None, times)


def enumerate_choices(fn):
    """Yield ``(probability, fn(chooser))`` for every leaf of the choice tree."""
    prefix = []
    while True:
        ch = Chooser(prefix)
        result = fn(ch)
        yield ch.prob, result
        taken = ch.taken
        i = len(taken) - 1
        while i >= 0 and taken[i][0] + 1 >= taken[i][1]:
            i -= 1
        if i < 0:
            return
        prefix = [idx for idx, _ in taken[:i]] + [taken[i][0] + 1]


@dataclass
class ExactMeasures:
    """Exact selection probabilities and the four ratios they imply."""

    n: int
    opt: frozenset
    freq: tuple
    curve: tuple
    opt_curve: tuple
    weights: tuple
    leaves: int
    total_prob: float

    def _ratio(self, num, den):
        return math.inf if den <= 0 else num / den

    @property
    def probability(self) -> float:
        return self._ratio(1.0, min(self.freq[e] for e in self.opt)) if self.opt else 1.0

    @property
    def intersection(self) -> float:
        return self._ratio(len(self.opt), sum(self.freq[e] for e in self.opt))

    @property
    def ordinal(self) -> float:
        vals = [self._ratio(o, a) for o, a in zip(self.opt_curve, self.curve) if o > 0]
        return max(vals) if vals else 1.0

    @property
    def utility(self) -> float:
        w = self.weights
        return self._ratio(sum(w[e] for e in self.opt), sum(w[e] * f for e, f in enumerate(self.freq)))

    def measures(self) -> dict:
        return {"probability": self.probability, "ordinal": self.ordinal,
                "intersection": self.intersection, "utility": self.utility}


def exhaustive_run(M, engine: str, params: dict | None = None, weights=None) -> ExactMeasures:
    """Exact expectations for ``engine`` on ``M`` (``n <= 7``)."""
    if M.n > MAX_EXHAUSTIVE_N:
        raise ValueError(f"exhaustive enumeration limited to n <= {MAX_EXHAUSTIVE_N}")
    spec = get_engine(engine)
    if not spec.supports(M):
        raise ValueError(f"engine {engine!r} does not support family {M.family!r}")
    params = dict(params or {})
    n = M.n
    from .measures import default_weights
    w = tuple(float(x) for x in (weights if weights is not None else default_weights(M)))
    params.setdefault("weights", w)

    if spec.sample == "times":
        depth = int(params.get("depth", M.rho.bit_length() - 1))

        def one(ch):
            return spec.run(M, interval_trial(n, depth, ch), ch, params).selected
    else:
        def one(ch):
            trial = spec.trial(M, ch, params)
            return spec.run(M, trial, ch, params).selected

    freq = [0.0] * n
    total = 0.0
    leaves = 0
    for prob, sel in enumerate_choices(one):
        total += prob
        leaves += 1
        for e in sel:
            freq[e] += prob
    order = M.order
    opt = greedy_opt(M)
    curve, opt_curve = [], []
    acc = acc_opt = 0.0
    for k in range(1, n + 1):
        e = order.element(k)
        acc += freq[e]
        acc_opt += e in opt
        curve.append(acc)
        opt_curve.append(acc_opt)
    return ExactMeasures(n, opt, tuple(freq), tuple(curve), tuple(opt_curve), w, leaves, total)
