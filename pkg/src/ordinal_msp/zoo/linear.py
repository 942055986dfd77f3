"""Linear matroids over a prime field, with the adjoined identity frame.

Columns of the matrix are the elements; the frame ``B`` is the identity,
so ``C(B, r)`` is the set of rows where column ``r`` is nonzero.
"""

from __future__ import annotations

from typing import Sequence

from ..core import OptTracker, OrderedMatroid
from .transversal import _kuhn


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def gf_rank(columns: Sequence[Sequence[int]], p: int) -> int:
    """Rank of a list of column vectors over GF(p) by elimination."""
    rows = [list(c) for c in columns]
    if not rows:
        return 0
    m = len(rows[0])
    rank = 0
    for col in range(m):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        prow = [(x * inv) % p for x in rows[rank]]
        rows[rank] = prow
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


class LinearMatroid(OrderedMatroid):
    """Column matroid of ``matrix`` (rows x columns) over GF(``field_p``)."""

    family = "linear"

    def __init__(self, matrix: Sequence[Sequence[int]], field_p: int = 2, k: int | None = None, order=None):
        if not _is_prime(int(field_p)):
            raise ValueError(f"field size {field_p} is not prime")
        p = int(field_p)
        rows = [[int(x) % p for x in row] for row in matrix]
        if not rows:
            raise ValueError("matrix needs at least one row")
        n_cols = len(rows[0])
        if any(len(r) != n_cols for r in rows):
            raise ValueError("matrix rows have different lengths")
        cols = [tuple(rows[i][j] for i in range(len(rows))) for j in range(n_cols)]
        supp = [tuple(i for i, x in enumerate(c) if x) for c in cols]
        kmax = max((len(s) for s in supp), default=0)
        if k is None:
            k = kmax
        elif kmax > k:
            bad = next(j for j, s in enumerate(supp) if len(s) > k)
            raise ValueError(f"column {bad} has {len(supp[bad])} nonzeros, more than k={k}")
        super().__init__(n_cols, order=order)
        self.p = p
        self.k = int(k)
        self.n_rows = len(rows)
        self.matrix = rows
        self.columns = cols
        self.support = supp
        self._bits = [sum(1 << i for i in s) for s in supp] if p == 2 else None

    def indep(self, S) -> bool:
        S = list(S)
        if self.p == 2:
            basis = {}
            for e in S:
                v = self._bits[e]
                while v:
                    h = v.bit_length() - 1
                    b = basis.get(h)
                    if b is None:
                        basis[h] = v
                        break
                    v ^= b
                if not v:
                    return False
            return True
        return gf_rank([self.columns[e] for e in S], self.p) == len(S)

    def opt_tracker(self):
        return _XorTracker(self) if self.p == 2 else OptTracker(self)

    def fundamental_circuit(self, r: int) -> frozenset:
        """``C(B, r)`` as row indices."""
        return frozenset(self.support[r])

    def frame_injection(self, X) -> dict:
        """Canonical ``pi_X``: an injection into rows with ``pi_X(x)`` in the
        support of ``x`` (so ``B + x - pi_X(x)`` is a base)."""
        X = list(X)
        if not self.indep(X):
            raise ValueError("set is dependent; no frame injection")
        M = _kuhn(self.support, self.order.sort(X), self.n_rows)
        if M is None:
            raise AssertionError("independent set without a frame injection")
        return M

    def to_dict(self) -> dict:
        return {"family": "framed", "n": self.n, "matrix": [list(r) for r in self.matrix],
                "field_p": self.p, "k": self.k, "order": list(self.order.ranking)}


def fundamental_circuit(L: LinearMatroid, r: int) -> frozenset:
    return L.fundamental_circuit(r)


def frame_injection(L: LinearMatroid, X) -> dict:
    return L.frame_injection(X)


class _XorTracker(OptTracker):
    """GF(2) basis of OPT; each basis vector remembers which members it
    combines, so a dependent newcomer reveals its circuit directly."""

    def __init__(self, matroid):
        super().__init__(matroid)
        self.basis = {}

    def _reduce(self, e):
        v = self.m._bits[e]
        combo = 1 << e
        basis = self.basis
        while v:
            h = v.bit_length() - 1
            b = basis.get(h)
            if b is None:
                break
            v ^= b[0]
            combo ^= b[1]
        return v, combo

    def add(self, r):
        A = self.members
        if r in A:
            return True, None
        v, combo = self._reduce(r)
        if v:
            self.basis[v.bit_length() - 1] = (v, combo)
            A.add(r)
            return True, None
        key = self.key
        worst = r
        c = combo
        while c:
            low = c & -c
            e = low.bit_length() - 1
            if key[e] > key[worst]:
                worst = e
            c ^= low
        if worst == r:
            return False, None
        A.discard(worst)
        A.add(r)
        self.basis = {}
        for e in A:
            v, cb = self._reduce(e)
            self.basis[v.bit_length() - 1] = (v, cb)
        return True, worst
