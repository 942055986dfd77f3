"""Laminar matroids, their tree drawing, neighbours and representatives.

Terminal *labels* ``1..n`` follow the left-to-right order of the tree
drawing (children sorted by their smallest element id); ``0`` and ``n+1``
are the sentinels hanging off the auxiliary root.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable, Sequence

from ..core import OptTracker, OrderedMatroid


def pre_nex(J: Iterable[int], y: int, n: int) -> tuple:
    """Left and right neighbours of label ``y`` in ``J`` (sentinels 0, n+1)."""
    Js = sorted(J)
    return _pre_nex_sorted(Js, y, n)


def _pre_nex_sorted(Js: Sequence[int], y: int, n: int) -> tuple:
    i = bisect_left(Js, y)
    pre = Js[i - 1] if i > 0 else 0
    j = i + 1 if i < len(Js) and Js[i] == y else i
    nex = Js[j] if j < len(Js) else n + 1
    return pre, nex


class LaminarMatroid(OrderedMatroid):
    """``X`` independent iff ``|X & L| <= c(L)`` for every ``L`` in the family."""

    family = "laminar"

    def __init__(self, n: int, sets: Sequence[Iterable[int]], caps: Sequence[int], order=None):
        sets = [frozenset(int(e) for e in L) for L in sets]
        caps = [int(c) for c in caps]
        if len(sets) != len(caps):
            raise ValueError("one capacity per laminar set is required")
        super().__init__(n, order=order)
        ground = frozenset(range(n))
        seen = {}
        for L, c in zip(sets, caps):
            if not L:
                raise ValueError("laminar sets must be non-empty")
            if not L <= ground:
                raise ValueError(f"set {sorted(L)} has elements outside 0..{n - 1}")
            if c <= 0:
                raise ValueError(f"capacity of {sorted(L)} must be positive, got {c}")
            if len(L) == 1 and c != 1:
                raise ValueError(f"singleton {sorted(L)} must have capacity 1, got {c}")
            if L in seen:
                raise ValueError(f"set {sorted(L)} listed twice")
            seen[L] = c
        items = list(seen.items())
        for i in range(len(items)):
            A = items[i][0]
            for j in range(i + 1, len(items)):
                B = items[j][0]
                I = A & B
                if I and I != A and I != B:
                    raise ValueError(f"family is not laminar: {sorted(A)} and {sorted(B)} cross")
        self.sets = [L for L, _ in items]
        self.caps = [c for _, c in items]
        self._build_tree(seen)

    def _build_tree(self, capmap):
        n = self.n
        full = frozenset(range(n))
        nodes = dict(capmap)
        if full not in nodes:
            nodes[full] = n
        for e in range(n):
            nodes.setdefault(frozenset([e]), 1)
        # node 0 is the root R; parent = smallest strictly containing set
        order = sorted(nodes, key=lambda L: (-len(L), min(L)))
        parent = [-1] * len(order)
        owner = [-1] * n
        for i, L in enumerate(order):
            parent[i] = owner[min(L)]
            for e in L:
                owner[e] = i
        children = [[] for _ in order]
        for i, p in enumerate(parent):
            if p >= 0:
                children[p].append(i)
        for ch in children:
            ch.sort(key=lambda i: min(order[i]))
        self._node_sets = order
        self._node_caps = [nodes[L] for L in order]
        self._node_mask = [sum(1 << e for e in L) for L in order]
        self._parent = parent
        depth = [0] * len(order)
        label = [0] * n
        leaf = [0] * n
        chain = [None] * n
        nxt = 1
        stack = [(0, 1, (0,))]
        while stack:
            v, d, path = stack.pop()
            depth[v] = d
            L = order[v]
            if len(L) == 1 and not children[v]:
                (e,) = L
                label[e] = nxt
                leaf[e] = v
                chain[e] = path
                nxt += 1
                continue
            for c in reversed(children[v]):
                stack.append((c, d + 1, path + (c,)))
        self._depth = depth
        self.label = label
        self.element_at = [None] + sorted(range(n), key=label.__getitem__) + [None]
        # constraining ancestors of each element, deepest first (leaf singletons skipped)
        self._anc = [tuple(v for v in reversed(chain[e]) if len(order[v]) > 1) for e in range(n)]
        self._chain = chain
        self._lca_table = None

    def _reset_order_caches(self):
        pass

    def indep(self, S) -> bool:
        caps = self._node_caps
        cnt = {}
        for e in S:
            for v in self._anc[e]:
                c = cnt.get(v, 0) + 1
                if c > caps[v]:
                    return False
                cnt[v] = c
        return True

    def opt_tracker(self):
        return _LaminarTracker(self)

    # drawing helpers -------------------------------------------------

    def positions(self, X) -> list:
        """Sorted labels of a set of elements."""
        lab = self.label
        return sorted(lab[e] for e in X)

    def lca_depth(self, a: int, b: int) -> int:
        """Depth of ``a v b`` for labels in ``0..n+1`` (auxiliary root has depth 0)."""
        n = self.n
        if a <= 0 or b <= 0 or a > n or b > n:
            return 0
        tab = self._lca_table
        if tab is None and n <= 400:
            tab = self._lca_table = self._make_lca_table()
        if tab is not None:
            return tab[a][b]
        ca = self._chain[self.element_at[a]]
        cb = self._chain[self.element_at[b]]
        d = 0
        for x, y in zip(ca, cb):
            if x != y:
                break
            d += 1
        return d

    def _make_lca_table(self):
        n = self.n
        tab = [[0] * (n + 2) for _ in range(n + 2)]
        chains = [None] + [self._chain[self.element_at[a]] for a in range(1, n + 1)]
        for a in range(1, n + 1):
            ca = chains[a]
            row = tab[a]
            for b in range(a, n + 1):
                cb = chains[b]
                d = 0
                for x, y in zip(ca, cb):
                    if x != y:
                        break
                    d += 1
                row[b] = d
                tab[b][a] = d
        return tab

    def representative_label(self, Js: Sequence[int], y: int) -> int:
        """``pi_J(y)`` on labels; ``Js`` sorted and non-empty."""
        i = bisect_left(Js, y)
        if i < len(Js) and Js[i] == y:
            return y
        pre = Js[i - 1] if i > 0 else 0
        nex = Js[i] if i < len(Js) else self.n + 1
        if self.lca_depth(y, pre) > self.lca_depth(y, nex):
            return pre
        return nex

    def to_dict(self) -> dict:
        return {"family": self.family, "n": self.n,
                "laminar_sets": [sorted(L) for L in self.sets], "caps": list(self.caps),
                "order": list(self.order.ranking)}


def representative(lam: LaminarMatroid, J: Iterable[int], y: int) -> int:
    """``pi_J(y)`` for labels: ``y`` itself if in ``J``, else the neighbour whose
    join with ``y`` is strictly deeper (ties go right)."""
    Js = sorted(J)
    if not Js:
        raise ValueError("J must be non-empty")
    if not 1 <= y <= lam.n:
        raise ValueError(f"label {y} outside 1..{lam.n}")
    return lam.representative_label(Js, y)


def fibers(lam: LaminarMatroid, J: Iterable[int]) -> dict:
    """``{j: [labels y with pi_J(y) = j]}``."""
    Js = sorted(J)
    out = {j: [] for j in Js}
    for y in range(1, lam.n + 1):
        out[lam.representative_label(Js, y)].append(y)
    return out


class _LaminarTracker(OptTracker):
    """Counts per tree node; the exchange partner lives in the deepest tight
    ancestor of the newcomer."""

    def __init__(self, matroid):
        super().__init__(matroid)
        self.cnt = [0] * len(matroid._node_sets)

    def add(self, r):
        A = self.members
        if r in A:
            return True, None
        m = self.m
        cnt = self.cnt
        caps = m._node_caps
        anc = m._anc[r]
        tight = -1
        for v in anc:
            if cnt[v] >= caps[v]:
                tight = v
                break
        if tight < 0:
            for v in anc:
                cnt[v] += 1
            A.add(r)
            return True, None
        mask = m._node_mask[tight]
        key = self.key
        worst = None
        for a in A:
            if mask >> a & 1 and (worst is None or key[a] > key[worst]):
                worst = a
        if worst is None or key[worst] < key[r]:
            return False, None
        for v in m._anc[worst]:
            cnt[v] -= 1
        for v in anc:
            cnt[v] += 1
        A.discard(worst)
        A.add(r)
        return True, worst
