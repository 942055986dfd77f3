"""Trial orchestration, estimators, exact enumeration, bounds and generators."""

from .bounds import BOUND_TABLE, BoundRow, alpha, engine_bound, improving_greedy_ratio
from .exhaustive import Chooser, ExactMeasures, enumerate_choices, exhaustive_run
from .generators import (GENERATORS, GeneratorError, generate_instance, partition_mM, partition_N, random_bipartite,
                         random_gammoid_dag, random_graphic, random_hypergraphic, random_laminar, random_matching,
                         random_semiplanar, random_sparse_matrix, random_uniform, tpa_instance, tpa_weights)
from .measures import (MIN_SUCCESSES, WEIGHT_PRESETS, Z95, CompetitivenessReport, MeasureEstimate, TrialPlan,
                       default_weights, dominance_check, estimate_measures)
from .report import CSV_COLUMNS, format_summary, report_json, report_rows, rows_to_csv, write_plan_artifacts

__all__ = [
    "BOUND_TABLE", "BoundRow", "CSV_COLUMNS", "Chooser", "CompetitivenessReport", "ExactMeasures", "GENERATORS", "GeneratorError",
    "MIN_SUCCESSES", "MeasureEstimate", "TrialPlan", "WEIGHT_PRESETS", "Z95", "alpha", "default_weights",
    "dominance_check", "engine_bound", "enumerate_choices", "estimate_measures", "exhaustive_run",
    "format_summary", "generate_instance", "improving_greedy_ratio", "partition_N", "partition_mM",
    "random_bipartite", "random_gammoid_dag", "random_graphic", "random_hypergraphic", "random_laminar",
    "random_matching", "random_semiplanar", "random_sparse_matrix", "random_uniform", "report_json",
    "report_rows", "rows_to_csv", "tpa_instance", "tpa_weights", "write_plan_artifacts",
]
