from estimators.registry import (
    EstimatorContext,
    EstimatorKind,
    FixedPointOptions,
    Registry,
    describe,
    get_estimator,
    register,
)

# modules below register themselves in Registry on import
from estimators.baselines import hhat_estimate, identity_estimate
from estimators.mle import mixture_log_likelihood, mle_estimate, mle_fixed_point_map
from estimators.posterior import fhat_estimate, optimal_estimate

__all__ = [
    "EstimatorContext",
    "EstimatorKind",
    "FixedPointOptions",
    "Registry",
    "describe",
    "get_estimator",
    "register",
    "hhat_estimate",
    "identity_estimate",
    "mixture_log_likelihood",
    "mle_estimate",
    "mle_fixed_point_map",
    "fhat_estimate",
    "optimal_estimate",
]
