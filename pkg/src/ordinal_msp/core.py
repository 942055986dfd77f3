"""Ordered matroids: oracle contract, greedy optimum, rank/span and minors.

Elements are dense integer ids ``0..n-1``.  A :class:`ValueOrder` stores the
hidden total order; position 1 is the best element ``r^1``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

__all__ = [
    "ValueOrder",
    "OrderedMatroid",
    "Minor",
    "OptTracker",
    "is_independent",
    "greedy_opt",
    "rank",
    "span",
    "restrict",
    "contract",
    "brute_force_opt",
    "verify_matroid_axioms",
    "MAX_BRUTE_FORCE",
]

MAX_BRUTE_FORCE = 16


class ValueOrder:
    """Bijection between rank positions ``1..n`` and element ids."""

    __slots__ = ("ranking", "key")

    def __init__(self, ranking: Sequence[int]):
        ranking = tuple(int(e) for e in ranking)
        n = len(ranking)
        key = [-1] * n
        for k, e in enumerate(ranking):
            if not 0 <= e < n or key[e] != -1:
                raise ValueError(f"value order is not a permutation of 0..{n - 1}: {ranking}")
            key[e] = k
        self.ranking = ranking
        # 0-based position of each element; smaller is better
        self.key = tuple(key)

    @classmethod
    def identity(cls, n: int) -> "ValueOrder":
        return cls(range(n))

    def __len__(self) -> int:
        return len(self.ranking)

    def __eq__(self, other) -> bool:
        return isinstance(other, ValueOrder) and self.ranking == other.ranking

    def __hash__(self) -> int:
        return hash(self.ranking)

    def __repr__(self) -> str:
        return f"ValueOrder({list(self.ranking)})"

    def element(self, k: int) -> int:
        """Element ``r^k`` (1-based)."""
        if not 1 <= k <= len(self.ranking):
            raise IndexError(k)
        return self.ranking[k - 1]

    def position(self, e: int) -> int:
        """Rank position of ``e`` (1-based), inverse of :meth:`element`."""
        return self.key[e] + 1

    def prefix(self, k: int) -> frozenset:
        """``R^k``: the ``k`` best elements."""
        return frozenset(self.ranking[:k])

    def sort(self, elems: Iterable[int]) -> list:
        """Elements sorted best first."""
        return sorted(elems, key=self.key.__getitem__)

    def better(self, a: int, b: int) -> bool:
        return self.key[a] < self.key[b]


class OrderedMatroid:
    """Ground set ``0..n-1``, an independence oracle and a value order.

    Subclasses override :meth:`indep`; ``oracle`` may also be passed directly.
    ``indep`` is the unchecked fast path used by engines, ``is_independent``
    validates ids first.
    """

    family = "oracle"

    def __init__(self, n: int, oracle: Callable[[frozenset], bool] | None = None,
                 order: ValueOrder | Sequence[int] | None = None,
                 ground: Iterable[int] | None = None):
        self.n = int(n)
        if order is None:
            order = ValueOrder.identity(self.n)
        elif not isinstance(order, ValueOrder):
            order = ValueOrder(order)
        if len(order) != self.n:
            raise ValueError("value order length differs from n")
        self.order = order
        self.ground = frozenset(range(self.n)) if ground is None else frozenset(ground)
        self._oracle = oracle

    def indep(self, S) -> bool:
        return bool(self._oracle(frozenset(S)))

    def is_independent(self, S: Iterable[int]) -> bool:
        S = frozenset(S)
        bad = S - self.ground
        if bad:
            raise ValueError(f"element ids outside the ground set: {sorted(bad)}")
        return self.indep(S)

    def opt_tracker(self) -> "OptTracker":
        return OptTracker(self)

    def with_order(self, order) -> "OrderedMatroid":
        """Same matroid under another value order."""
        import copy

        other = copy.copy(self)
        other.order = order if isinstance(order, ValueOrder) else ValueOrder(order)
        if len(other.order) != self.n:
            raise ValueError("value order length differs from n")
        other._reset_order_caches()
        return other

    def _reset_order_caches(self) -> None:
        pass

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n})"


class OptTracker:
    """Maintains ``OPT(R_i)`` as elements arrive one at a time.

    Uses ``OPT(R_i) = OPT(OPT(R_{i-1}) + r_i)``: the newcomer enters iff the
    better part of the current optimum plus it is independent, and the element
    pushed out is the worst one whose removal restores independence.
    Families override this with cheaper incremental structures.
    """

    def __init__(self, matroid: OrderedMatroid):
        self.m = matroid
        self.key = matroid.order.key
        self.members: set = set()

    def __contains__(self, e) -> bool:
        return e in self.members

    def snapshot(self) -> frozenset:
        return frozenset(self.members)

    def add(self, r: int):
        """Insert ``r``; returns ``(entered, dropped)``."""
        A = self.members
        if r in A:
            return True, None
        indep = self.m.indep
        if indep(A | {r}):
            A.add(r)
            return True, None
        kr = self.key[r]
        key = self.key
        if not indep({a for a in A if key[a] < kr} | {r}):
            return False, None
        for e in sorted((a for a in A if key[a] > kr), key=key.__getitem__, reverse=True):
            trial = (A - {e}) | {r}
            if indep(trial):
                A.discard(e)
                A.add(r)
                return True, e
        raise AssertionError("no exchange found; oracle is not a matroid")


def is_independent(M: OrderedMatroid, S: Iterable[int]) -> bool:
    return M.is_independent(S)


def _check_subset(M: OrderedMatroid, Q) -> frozenset:
    Q = frozenset(Q)
    bad = Q - M.ground
    if bad:
        raise ValueError(f"element ids outside the ground set: {sorted(bad)}")
    return Q


def greedy_opt(M: OrderedMatroid, Q: Iterable[int] | None = None) -> frozenset:
    """Lexicographically best base of ``Q`` (greedy in value order)."""
    Q = M.ground if Q is None else _check_subset(M, Q)
    tracker = M.opt_tracker()
    for e in M.order.sort(Q):
        tracker.add(e)
    return tracker.snapshot()


def rank(M: OrderedMatroid, Q: Iterable[int] | None = None) -> int:
    return len(greedy_opt(M, Q))


def span(M: OrderedMatroid, Q: Iterable[int]) -> frozenset:
    Q = _check_subset(M, Q)
    base = greedy_opt(M, Q)
    return frozenset(Q | {r for r in M.ground - Q if not M.indep(base | {r})})


class Minor(OrderedMatroid):
    """Restriction to ``Q`` of the contraction ``M / C``.

    ``I`` is independent iff ``I`` lies in the ground set and
    ``rank(I | C) - rank(C) == |I|``.
    """

    family = "minor"

    def __init__(self, base: OrderedMatroid, restricted_to: Iterable[int] | None = None,
                 contracted: Iterable[int] = ()):
        C = _check_subset(base, contracted)
        Q = base.ground if restricted_to is None else _check_subset(base, restricted_to)
        super().__init__(base.n, order=base.order, ground=Q - C)
        self.base = base
        self.restricted_to = Q
        self.contracted = C
        self._contracted_basis = greedy_opt(base, C)

    def indep(self, S) -> bool:
        S = frozenset(S)
        if not S <= self.ground:
            return False
        return self.base.indep(S | self._contracted_basis)

    def with_order(self, order):
        raise TypeError("a minor shares the order of its base matroid")


def restrict(M: OrderedMatroid, Q: Iterable[int]) -> Minor:
    return Minor(M, restricted_to=Q)


def contract(M: OrderedMatroid, Q: Iterable[int]) -> Minor:
    return Minor(M, contracted=Q)


def _weight_of(w, e) -> float:
    return w[e]


def brute_force_opt(M: OrderedMatroid, Q: Iterable[int], w: Mapping[int, float] | Sequence[float]) -> frozenset:
    """Maximum-weight independent subset of ``Q`` by enumeration."""
    Q = sorted(_check_subset(M, Q))
    if len(Q) > MAX_BRUTE_FORCE:
        raise ValueError(f"brute force limited to {MAX_BRUTE_FORCE} elements, got {len(Q)}")
    best, best_w = frozenset(), 0.0
    for size in range(1, len(Q) + 1):
        for S in combinations(Q, size):
            if M.indep(S):
                ws = sum(_weight_of(w, e) for e in S)
                if ws > best_w:
                    best, best_w = frozenset(S), ws
    return best


def verify_matroid_axioms(M: OrderedMatroid, max_n: int = 12) -> bool:
    """Exhaustive check of the independence axioms on the ground set.

    Downward closure plus: for every independent ``I``, the elements that do
    not extend ``I`` must have rank ``|I|`` (otherwise some set has maximal
    independent subsets of different sizes).
    """
    ground = sorted(M.ground)
    m = len(ground)
    if m > max_n:
        raise ValueError(f"axiom check limited to {max_n} elements, got {m}")
    full = (1 << m) - 1
    indep = [False] * (1 << m)
    for mask in range(1 << m):
        indep[mask] = M.indep(ground[i] for i in range(m) if mask >> i & 1)
    if not indep[0]:
        return False
    rk = [0] * (1 << m)
    for mask in range(1, 1 << m):
        bits = [i for i in range(m) if mask >> i & 1]
        if indep[mask]:
            for i in bits:
                if not indep[mask ^ (1 << i)]:
                    return False
            rk[mask] = len(bits)
        else:
            rk[mask] = max(rk[mask ^ (1 << i)] for i in bits)
    for mask in range(1 << m):
        if not indep[mask]:
            continue
        ext = 0
        for i in range(m):
            if not mask >> i & 1 and indep[mask | (1 << i)]:
                ext |= 1 << i
        if rk[full & ~ext] != bin(mask).count("1"):
            return False
    return True
