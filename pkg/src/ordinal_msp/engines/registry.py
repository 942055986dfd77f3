"""Engine lookup by name, with the sampling rule and family constraints of each."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import forbidden as fb
from . import greedy as gr
from . import uniform as un
from .keylemma import key_lemma_values
from .trial import make_trial

__all__ = ["EngineSpec", "ENGINES", "engine_k", "get_engine"]


@dataclass(frozen=True)
class EngineSpec:
    """``run(M, trial, rng, params)``; ``sample`` is one of ``binomial``,
    ``half`` (s = n // 2), ``none`` (s = 0) or ``times``."""

    name: str
    families: tuple | None
    sample: str
    run: Callable
    k: Callable | None = None
    default_p: float | None = None

    def supports(self, M) -> bool:
        return self.families is None or M.family in self.families

    def param_p(self, M, params=None) -> float | None:
        params = params or {}
        if self.sample != "binomial":
            return None
        if "p" in params:
            return float(params["p"])
        if self.default_p is not None:
            return self.default_p
        return key_lemma_values(self.k(M))[0]

    def trial(self, M, rng, params=None):
        n = M.n
        if self.sample == "times":
            return make_trial(n, rng=rng, with_times=True)
        if self.sample == "none":
            return make_trial(n, rng=rng, s=0)
        if self.sample == "half":
            return make_trial(n, rng=rng, s=n // 2)
        return make_trial(n, self.param_p(M, params), rng)

    def replay(self, M, trial, rng=None, params=None):
        return self.run(M, trial, rng, params or {})


def _layered():
    from .. import layered
    return layered


def _gammoid_k(M):
    if M.mu is None:
        raise ValueError("gammoid instance needs a declared exchangeability bound mu")
    return M.mu


ENGINES = {spec.name: spec for spec in [
    EngineSpec("classical", ("uniform",), "binomial",
               lambda M, t, rng, p: fb.run_classical_secretary(t, M.order), k=lambda M: 1),
    EngineSpec("transversal", ("transversal",), "binomial",
               lambda M, t, rng, p: fb.run_transversal(M, t), k=lambda M: 1),
    EngineSpec("gammoid", ("gammoid",), "binomial",
               lambda M, t, rng, p: fb.run_gammoid(M, t), k=_gammoid_k),
    EngineSpec("packing", ("matching",), "binomial",
               lambda M, t, rng, p: fb.run_packing(M, t), k=lambda M: 2),
    EngineSpec("graphic", ("graphic",), "binomial",
               lambda M, t, rng, p: fb.run_graphic(M, t), k=lambda M: 2),
    EngineSpec("hypergraphic", ("hypergraphic",), "binomial",
               lambda M, t, rng, p: fb.run_hypergraphic(M, t), k=lambda M: 2),
    EngineSpec("framed", ("framed", "linear"), "binomial",
               lambda M, t, rng, p: fb.run_framed(M, t), k=lambda M: M.k),
    EngineSpec("semiplanar", ("semiplanar", "laminar"), "binomial",
               lambda M, t, rng, p: fb.run_semiplanar(M, t), k=lambda M: 4),
    EngineSpec("laminar", ("laminar",), "binomial",
               lambda M, t, rng, p: fb.run_laminar(M, t), k=lambda M: 3),
    EngineSpec("improving_greedy", None, "half",
               lambda M, t, rng, p: gr.run_improving_greedy(M, t)),
    EngineSpec("tpa", None, "binomial",
               lambda M, t, rng, p: gr.run_tpa(M, p["weights"], t, rng, rho=p.get("rho")), default_p=0.5),
    EngineSpec("online_greedy", None, "none",
               lambda M, t, rng, p: gr.run_online_greedy(M, t)),
    EngineSpec("offline_greedy", None, "none",
               lambda M, t, rng, p: gr.run_offline_greedy(M, t)),
    EngineSpec("uniform_variant", ("uniform",), "times",
               lambda M, t, rng, p: un.run_uniform_variant(M.rho, t, M.order)),
    EngineSpec("kleinberg", ("uniform",), "none",
               lambda M, t, rng, p: un.run_kleinberg_original(M.rho, t, M.order)),
    EngineSpec("ordinal_reduction", None, "binomial",
               lambda M, t, rng, p: _layered().run_ordinal_reduction(M, t, rng), default_p=0.5),
    EngineSpec("probability_reduction", None, "binomial",
               lambda M, t, rng, p: _layered().run_probability_reduction(M, t, rng), default_p=0.5),
]}


def get_engine(name: str) -> EngineSpec:
    try:
        return ENGINES[name]
    except KeyError:
        raise ValueError(f"unknown engine {name!r}; expected one of {', '.join(sorted(ENGINES))}") from None


def engine_k(name: str, M) -> int:
    spec = get_engine(name)
    if spec.k is None:
        raise ValueError(f"engine {name!r} has no forbidden sets")
    return spec.k(M)
