"""Ordinal matroid secretary algorithms, simulation harness and verifiers."""

from .core import (MAX_BRUTE_FORCE, Minor, OptTracker, OrderedMatroid, ValueOrder, brute_force_opt, contract,
                   greedy_opt, is_independent, rank, restrict, span, verify_matroid_axioms)
from . import engines, harness, layered, zoo

__version__ = "0.1.0"

__all__ = [
    "MAX_BRUTE_FORCE", "Minor", "OptTracker", "OrderedMatroid", "ValueOrder", "brute_force_opt", "contract",
    "greedy_opt", "is_independent", "rank", "restrict", "span", "verify_matroid_axioms",
    "engines", "harness", "layered", "zoo",
]
