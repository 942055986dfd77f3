"""Online selection engines, the key-lemma bounds and the forbidden-set verifier."""

from .forbidden import (run_classical_secretary, run_framed, run_gammoid, run_graphic, run_hypergraphic,
                        run_laminar, run_packing, run_semiplanar, run_transversal)
from .greedy import run_improving_greedy, run_offline_greedy, run_online_greedy, run_tpa, tpa_scales
from .keylemma import discrete_product_bound, key_lemma_bound, key_lemma_values
from .registry import ENGINES, EngineSpec, engine_k, get_engine
from .trial import (ArrivalTrial, SelectionOutcome, TraceStep, draw_sample_size, make_trial, outcome,
                    trial_rng)
from .uniform import interval_budgets, interval_index, run_kleinberg_original, run_uniform_variant, threshold_index
from .verifier import Counterexample, ForbiddenReport, forbidden_set, verify_forbidden_property

__all__ = [
    "ArrivalTrial", "Counterexample", "ENGINES", "EngineSpec", "ForbiddenReport", "SelectionOutcome",
    "TraceStep", "discrete_product_bound", "draw_sample_size", "engine_k", "forbidden_set", "get_engine",
    "interval_budgets", "interval_index", "key_lemma_bound", "key_lemma_values", "make_trial", "outcome",
    "run_classical_secretary", "run_framed", "run_gammoid", "run_graphic", "run_hypergraphic",
    "run_improving_greedy", "run_kleinberg_original", "run_laminar", "run_offline_greedy",
    "run_online_greedy", "run_packing", "run_semiplanar", "run_tpa", "run_transversal",
    "run_uniform_variant", "threshold_index", "tpa_scales", "trial_rng", "verify_forbidden_property",
]
