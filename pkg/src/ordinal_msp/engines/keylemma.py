"""Sampling probability, ratio and success bounds for forbidden sets of size k."""

from __future__ import annotations

import math

__all__ = ["key_lemma_values", "key_lemma_bound", "discrete_product_bound"]


def key_lemma_values(k: int) -> tuple:
    """``(p(k), alpha(k))``: ``(1/e, e)`` for k=1, else ``(k^(-1/(k-1)), k^(k/(k-1)))``."""
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    k = int(k)
    if k == 1:
        return math.exp(-1.0), math.e
    return k ** (-1.0 / (k - 1)), k ** (k / (k - 1))


def key_lemma_bound(k: int, p: float) -> float:
    """Continuous lower bound on the selection probability of each OPT element."""
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if k == 1:
        return -p * math.log(p)
    return (p - p ** k) / (k - 1)


def discrete_product_bound(n: int, k: int, p: float) -> float:
    """``E_{s~Bin(n,p)} (1/n) sum_{t=s+1}^{n} prod_{j=s+1}^{t-1} (1 - k/j)_+``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    total = 0.0
    for s in range(n + 1):
        if p in (0.0, 1.0):
            w = 1.0 if s == round(p * n) else 0.0
        else:
            w = math.comb(n, s) * p ** s * (1 - p) ** (n - s)
        if w == 0.0:
            continue
        inner, prod = 0.0, 1.0
        for t in range(s + 1, n + 1):
            if t > s + 1:
                prod *= max(0.0, 1.0 - k / (t - 1))
            inner += prod
        total += w * inner / n
    return total
