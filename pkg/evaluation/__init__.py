from evaluation.config import DEFAULT_ESTIMATORS, INTEGRATOR_CHOICES, EvalConfig, default_outer_samples
from evaluation.harness import (
    BLOCK_SIZE,
    delta_up,
    delta_up_asymptote,
    mmse_sweep,
    mse_of_estimator,
    mse_unsorted,
    outer_draws,
    standard_normals,
    summarize_losses,
)
from evaluation.regularity import EXPECTED_REGULARITY, RegularityResult, regularity_check, regularity_quadrature
from evaluation.results import MonteCarloResult, SweepRow, SweepTable, merge_results, pooled_se

__all__ = [
    "DEFAULT_ESTIMATORS",
    "INTEGRATOR_CHOICES",
    "EvalConfig",
    "default_outer_samples",
    "BLOCK_SIZE",
    "delta_up",
    "delta_up_asymptote",
    "mmse_sweep",
    "mse_of_estimator",
    "mse_unsorted",
    "outer_draws",
    "standard_normals",
    "summarize_losses",
    "EXPECTED_REGULARITY",
    "RegularityResult",
    "regularity_check",
    "regularity_quadrature",
    "MonteCarloResult",
    "SweepRow",
    "SweepTable",
    "merge_results",
    "pooled_se",
]
