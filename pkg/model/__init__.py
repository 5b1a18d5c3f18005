from model.gaussian import GaussianModel, PosteriorParams, posterior_params, sample_pair, sample_pairs
from model.integrators import (
    DEFAULT_MC_SAMPLES,
    IntegratorKind,
    RegionFunctionals,
    RegionIntegrator,
    ordered_region_prob,
    permutation_functionals,
    posterior_sorted_mean,
    restricted_mean,
)

__all__ = [
    "GaussianModel",
    "PosteriorParams",
    "posterior_params",
    "sample_pair",
    "sample_pairs",
    "DEFAULT_MC_SAMPLES",
    "IntegratorKind",
    "RegionFunctionals",
    "RegionIntegrator",
    "ordered_region_prob",
    "permutation_functionals",
    "posterior_sorted_mean",
    "restricted_mean",
]
