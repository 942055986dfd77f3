"""Threshold algorithms for uniform matroids ``U(n, rho)``.

Both engines only compare elements, so they take a value order (identity by
default) instead of a matroid object.
"""

from __future__ import annotations

import math

import numpy as np

from .trial import ArrivalTrial, outcome

__all__ = ["interval_budgets", "interval_index", "threshold_index", "run_uniform_variant",
           "run_kleinberg_original"]


def _keys_in_arrival(trial: ArrivalTrial, order) -> np.ndarray:
    order_idx = np.asarray(trial.order, dtype=np.int64)
    if order is None:
        return order_idx
    key = np.asarray(order.key, dtype=np.int64)
    if key.size != trial.n:
        raise ValueError(f"value order has {key.size} elements, trial has {trial.n}")
    return key[order_idx]


def interval_index(t) -> np.ndarray:
    """``j`` with ``t in [2^-j-1, 2^-j)``; time 0 maps to a very deep interval."""
    t = np.asarray(t, dtype=float)
    _, e = np.frexp(t)
    j = -e.astype(np.int64)
    return np.where(t > 0.0, j, 1 << 20)


def interval_budgets(rho: int, depth: int) -> list:
    """Floored budgets ``floor(rho / 2^(j+1))`` for ``j = 0..depth-1``."""
    return [rho >> (j + 1) for j in range(depth)]


def threshold_index(rho: int, j: int) -> int:
    """``ceil((1/2)^(j+1) (1 + eps_j) rho)`` with ``eps_j = sqrt(12 2^j ln(rho) / rho)``."""
    eps = math.sqrt(12.0 * 2.0 ** j * math.log(rho) / rho)
    return math.ceil(0.5 ** (j + 1) * (1.0 + eps) * rho)


def run_uniform_variant(rho: int, trial: ArrivalTrial, order=None):
    """Select ``r_i`` in ``J_j`` if it beats the ``q_j``-th best element that
    arrived before ``J_j`` started, while fewer than ``floor(rho/2^(j+1))``
    elements of ``J_j`` were taken.  Without ``q_j`` earlier elements the
    threshold is undefined and nothing in ``J_j`` is taken."""
    if rho < 2:
        raise ValueError("rank must be at least 2")
    if trial.times is None:
        raise ValueError("the uniform variant needs arrival times")
    n = trial.n
    keys = _keys_in_arrival(trial, order)
    t = np.asarray(trial.times, dtype=float)[np.asarray(trial.order, dtype=np.int64)]
    picked = []
    j = 0
    while (rho >> (j + 1)) > 0:
        budget = rho >> (j + 1)
        start = int(np.searchsorted(t, 2.0 ** (-j - 1), side="left"))
        stop = int(np.searchsorted(t, 2.0 ** (-j), side="left"))
        if stop > start:
            q = threshold_index(rho, j)
            if start >= q:
                thr = np.partition(keys[:start], q - 1)[q - 1]
                hits = np.flatnonzero(keys[start:stop] < thr)[:budget] + start
                picked.extend(hits.tolist())
        j += 1
    order_arr = trial.order
    return outcome(n, [order_arr[i] for i in picked])


def run_kleinberg_original(rho: int, trial: ArrivalTrial, order=None):
    """Kleinberg's bucket algorithm for ``rho = 2^kappa`` and ``n = 2^N``.

    The last block (the first ``n/2^kappa`` arrivals) contributes its first
    arrival.  Block ``i < kappa`` (arrival positions ``[n/2^(i+1), n/2^i)``)
    takes up to ``rho/2^(i+1)`` elements beating the ``rho/2^i``-th best
    earlier arrival; with fewer earlier arrivals every element qualifies.
    """
    n = trial.n
    if rho < 1 or rho & (rho - 1) or n & (n - 1) or rho > n:
        raise ValueError("rank and n must be powers of two with rank <= n")
    kappa = rho.bit_length() - 1
    keys = _keys_in_arrival(trial, order)
    picked = [0]
    for i in range(kappa - 1, -1, -1):
        start, stop = n >> (i + 1), n >> i
        q = rho >> i
        budget = rho >> (i + 1)
        if start >= q:
            thr = np.partition(keys[:start], q - 1)[q - 1]
            hits = np.flatnonzero(keys[start:stop] < thr)[:budget] + start
        else:
            hits = np.arange(start, min(stop, start + budget))
        picked.extend(hits.tolist())
    return outcome(n, [trial.order[i] for i in picked])
