"""Closed-form guarantees, kept as expressions and evaluated on demand."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from ..engines.keylemma import key_lemma_values

__all__ = ["BoundRow", "BOUND_TABLE", "alpha", "engine_bound", "improving_greedy_ratio"]


def alpha(k: int) -> float:
    """``e`` for k = 1, ``k^(k/(k-1))`` otherwise."""
    return key_lemma_values(k)[1]


def improving_greedy_ratio() -> float:
    """``1 / (1 - ln 2)``: intersection guarantee of Improving Greedy at ``s = n/2``."""
    return 1.0 / (1.0 - math.log(2.0))


@dataclass(frozen=True)
class BoundRow:
    family: str
    engine: str
    forbidden: str
    expression: str
    value: Callable

    def evaluate(self, **kw) -> float:
        return self.value(**kw)


BOUND_TABLE = (
    BoundRow("transversal", "transversal", "1", "e", lambda **kw: math.e),
    BoundRow("mu-exchangeable gammoid", "gammoid", "mu", "mu^(mu/(mu-1))", lambda mu=2, **kw: alpha(mu)),
    BoundRow("matching", "packing", "2", "4", lambda **kw: alpha(2)),
    BoundRow("mu-exchangeable packing", "packing", "mu", "mu^(mu/(mu-1))", lambda mu=2, **kw: alpha(mu)),
    BoundRow("graphic", "graphic", "2", "4", lambda **kw: alpha(2)),
    BoundRow("hypergraphic", "hypergraphic", "2", "4", lambda **kw: alpha(2)),
    BoundRow("k-framed / k-sparse", "framed", "k", "k^(k/(k-1))", lambda k=3, **kw: alpha(k)),
    BoundRow("semiplanar gammoid", "semiplanar", "4", "4^(4/3)", lambda **kw: 4.0 ** (4.0 / 3.0)),
    BoundRow("laminar", "laminar", "3", "3*sqrt(3)", lambda **kw: 3.0 * math.sqrt(3.0)),
    BoundRow("rank one (classical)", "classical", "1", "e", lambda **kw: math.e),
    BoundRow("general (intersection)", "improving_greedy", "-", "1/(1-ln 2)", lambda **kw: improving_greedy_ratio()),
)


def engine_bound(engine: str, M) -> dict:
    """Guarantee per measure.  Forbidden-set engines bound every measure by
    ``alpha(k)``; Improving Greedy only bounds the intersection measure."""
    from ..engines.registry import get_engine
    spec = get_engine(engine)
    if spec.k is not None:
        a = alpha(spec.k(M))
        return {m: a for m in ("probability", "ordinal", "intersection", "utility")}
    if engine == "improving_greedy":
        return {"intersection": improving_greedy_ratio()}
    return {}
