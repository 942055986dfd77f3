"""Arrival trials, selection outcomes and per-step traces."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

__all__ = ["ArrivalTrial", "SelectionOutcome", "TraceStep", "draw_sample_size", "make_trial", "trial_rng"]


def trial_rng(master_seed: int, index: int) -> np.random.Generator:
    """Generator for trial ``index``: the index is mixed into the seed entropy,
    so the stream does not depend on which worker runs the trial."""
    return np.random.default_rng([int(master_seed), int(index)])


def draw_sample_size(n: int, p: float, rng) -> int:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"sampling probability must lie in [0, 1], got {p}")
    if p == 0.0:
        return 0
    if p == 1.0:
        return int(n)
    return int(rng.binomial(n, p))


@dataclass(frozen=True)
class ArrivalTrial:
    """One random arrival order ``r_1..r_n`` and a sample size ``s``."""

    order: tuple
    s: int
    seed: int | None = None
    times: tuple | None = None

    def __post_init__(self):
        order = tuple(int(e) for e in self.order)
        object.__setattr__(self, "order", order)
        n = len(order)
        if sorted(order) != list(range(n)):
            raise ValueError("arrival order is not a permutation of 0..n-1")
        if not 0 <= self.s <= n:
            raise ValueError(f"sample size {self.s} outside [0, {n}]")
        if self.times is not None:
            times = tuple(float(t) for t in self.times)
            if len(times) != n:
                raise ValueError("one arrival time per element is required")
            if any(not 0.0 <= t < 1.0 for t in times):
                raise ValueError("arrival times must lie in [0, 1)")
            seq = [times[e] for e in order]
            if any(a > b for a, b in zip(seq, seq[1:])):
                raise ValueError("sorting the arrival times does not reproduce the order")
            object.__setattr__(self, "times", times)

    @property
    def n(self) -> int:
        return len(self.order)

    @classmethod
    def _trusted(cls, order: tuple, s: int, seed=None, times=None) -> "ArrivalTrial":
        # skips validation; only for orders built from a permutation draw
        obj = object.__new__(cls)
        for name, val in (("order", order), ("s", s), ("seed", seed), ("times", times)):
            object.__setattr__(obj, name, val)
        return obj

    def with_sample(self, s: int) -> "ArrivalTrial":
        return ArrivalTrial(self.order, s, self.seed, self.times)


def make_trial(n: int, p: float = 0.0, rng=None, *, seed: int | None = None, s: int | None = None,
               with_times: bool = False) -> ArrivalTrial:
    """Random order plus ``s ~ Bin(n, p)`` (or the given ``s``).

    With ``with_times`` each element gets a uniform arrival time in [0, 1)
    and the order is the sorted order of the times.
    """
    if rng is None:
        rng = np.random.default_rng(seed)
    if with_times:
        times = rng.random(n)
        order = np.argsort(times, kind="stable")
        s = 0 if s is None else int(s)
        if not 0 <= s <= n:
            raise ValueError(f"sample size {s} outside [0, {n}]")
        return ArrivalTrial._trusted(tuple(order.tolist()), s, seed, tuple(times.tolist()))
    order = rng.permutation(n)
    s = draw_sample_size(n, p, rng) if s is None else int(s)
    if not 0 <= s <= n:
        raise ValueError(f"sample size {s} outside [0, {n}]")
    return ArrivalTrial._trusted(tuple(order.tolist()), s, seed)


class TraceStep(NamedTuple):
    step: int
    element: int
    in_opt: bool
    check: bool
    accepted: bool

    def line(self) -> str:
        return f"{self.step}\t{self.element}\t{int(self.in_opt)}\t{int(self.check)}\t{int(self.accepted)}"


@dataclass
class SelectionOutcome:
    """The selected set of one run, plus an optional per-step trace."""

    n: int
    selected: frozenset
    trace: list | None = None
    extra: dict = field(default_factory=dict)

    @property
    def flags(self) -> tuple:
        sel = self.selected
        return tuple(e in sel for e in range(self.n))

    def trace_lines(self) -> list:
        return [t.line() for t in (self.trace or [])]


def outcome(n: int, selected: Sequence[int], trace=None, **extra) -> SelectionOutcome:
    return SelectionOutcome(n, frozenset(selected), trace, extra)
