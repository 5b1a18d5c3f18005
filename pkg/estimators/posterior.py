"""Permutation-sum estimators built on the posterior region functionals."""
from __future__ import annotations

from typing import Optional, Union

import numpy as np

from estimators.registry import EstimatorContext, register
from model.gaussian import GaussianModel
from model.integrators import RegionIntegrator
from prob_core.permutations import SortedVector, permutation_array, require_sorted_rows

SortedLike = Union[SortedVector, np.ndarray, list, tuple]


def _context(integ: RegionIntegrator, call_index: int, ctx: Optional[EstimatorContext]) -> EstimatorContext:
    return ctx if ctx is not None else EstimatorContext(integrator=integ, first_index=call_index)


def _rows(model: GaussianModel, y_sorted: SortedLike) -> np.ndarray:
    return require_sorted_rows(model.check_vector(y_sorted), model.n)


@register("optimal")
def optimal_batch(model: GaussianModel, ys: np.ndarray, ctx: EstimatorContext) -> np.ndarray:
    """Conditional mean E[sorted X | sorted Y]: sum over all permutations of restricted means."""
    ys = require_sorted_rows(ys, model.n)
    est = ctx.region(model, ys).means.sum(axis=1)
    # summation order can leave a near-tie out of order by one ulp
    return np.maximum.accumulate(est, axis=1)


@register("fhat")
def fhat_batch(model: GaussianModel, ys: np.ndarray, ctx: EstimatorContext) -> np.ndarray:
    """Low-noise approximation: posterior means of P_pi y weighted by region probabilities."""
    ys = require_sorted_rows(ys, model.n)
    region = ctx.region(model, ys)
    shifted = ys[:, permutation_array(model.n)] * model.shrinkage
    return np.einsum("mk,mkj->mj", region.probs, shifted)


def optimal_estimate(
    model: GaussianModel,
    y_sorted: SortedLike,
    integ: RegionIntegrator,
    call_index: int = 0,
    ctx: Optional[EstimatorContext] = None,
) -> np.ndarray:
    return optimal_batch(model, _rows(model, y_sorted), _context(integ, call_index, ctx))[0]


def fhat_estimate(
    model: GaussianModel,
    y_sorted: SortedLike,
    integ: RegionIntegrator,
    call_index: int = 0,
    ctx: Optional[EstimatorContext] = None,
) -> np.ndarray:
    return fhat_batch(model, _rows(model, y_sorted), _context(integ, call_index, ctx))[0]


__all__ = ["optimal_batch", "fhat_batch", "optimal_estimate", "fhat_estimate"]
