"""Uniform and partition matroids."""

from __future__ import annotations

from typing import Sequence

from ..core import OptTracker, OrderedMatroid


class UniformMatroid(OrderedMatroid):
    """U(n, rho): every set of at most ``rho`` elements is independent."""

    family = "uniform"

    def __init__(self, n: int, rho: int, order=None):
        if not 0 <= rho <= n:
            raise ValueError(f"rank must lie in [0, n]; got rank={rho} with n={n}")
        super().__init__(n, order=order)
        self.rho = int(rho)

    def indep(self, S) -> bool:
        return len(S) <= self.rho if isinstance(S, (set, frozenset)) else len(set(S)) <= self.rho

    def opt_tracker(self):
        return _UniformTracker(self)

    def to_dict(self) -> dict:
        return {"family": self.family, "n": self.n, "rank": self.rho, "order": list(self.order.ranking)}


class _UniformTracker(OptTracker):
    def add(self, r):
        A = self.members
        if r in A:
            return True, None
        if len(A) < self.m.rho:
            A.add(r)
            return True, None
        if not A:
            return False, None
        key = self.key
        worst = max(A, key=key.__getitem__)
        if key[worst] < key[r]:
            return False, None
        A.discard(worst)
        A.add(r)
        return True, worst


class PartitionMatroid(OrderedMatroid):
    """Disjoint parts covering the ground set, each with a capacity."""

    family = "partition"

    def __init__(self, parts: Sequence[Sequence[int]], caps: Sequence[int] | None = None, order=None):
        parts = [tuple(sorted(int(e) for e in p)) for p in parts]
        n = sum(len(p) for p in parts)
        caps = [1] * len(parts) if caps is None else [int(c) for c in caps]
        if len(caps) != len(parts):
            raise ValueError("one capacity per part is required")
        if any(c < 0 for c in caps):
            raise ValueError("capacities must be non-negative")
        part_of = [-1] * n
        for i, p in enumerate(parts):
            for e in p:
                if not 0 <= e < n or part_of[e] != -1:
                    raise ValueError(f"parts must partition 0..{n - 1}; offending element {e}")
                part_of[e] = i
        super().__init__(n, order=order)
        self.parts = parts
        self.caps = caps
        self.part_of = part_of

    def indep(self, S) -> bool:
        cnt = [0] * len(self.parts)
        for e in S:
            i = self.part_of[e]
            cnt[i] += 1
            if cnt[i] > self.caps[i]:
                return False
        return True

    def opt_tracker(self):
        return _PartitionTracker(self)

    def to_dict(self) -> dict:
        return {"family": self.family, "n": self.n, "parts": [list(p) for p in self.parts],
                "caps": list(self.caps), "order": list(self.order.ranking)}


class _PartitionTracker(OptTracker):
    def __init__(self, matroid):
        super().__init__(matroid)
        self.by_part = [set() for _ in matroid.parts]

    def add(self, r):
        A = self.members
        if r in A:
            return True, None
        i = self.m.part_of[r]
        P = self.by_part[i]
        if len(P) < self.m.caps[i]:
            P.add(r)
            A.add(r)
            return True, None
        if not P:
            return False, None
        key = self.key
        worst = max(P, key=key.__getitem__)
        if key[worst] < key[r]:
            return False, None
        P.discard(worst)
        A.discard(worst)
        P.add(r)
        A.add(r)
        return True, worst
