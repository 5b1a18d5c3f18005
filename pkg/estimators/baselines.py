from typing import Union

import numpy as np

from bounds.order_stats import order_statistic_means
from estimators.registry import EstimatorContext, register
from model.gaussian import GaussianModel
from prob_core.errors import ArgumentError
from prob_core.permutations import SortedVector, require_sorted_rows


def hhat_estimate(model: GaussianModel, order_stat_means: np.ndarray) -> np.ndarray:
    means = np.asarray(order_stat_means, dtype=float)
    if means.shape != (model.n,):
        raise ArgumentError(f"expected {model.n} order statistic means, got shape {means.shape}")
    return means.copy()


def identity_estimate(y_sorted: Union[SortedVector, np.ndarray, list, tuple]) -> np.ndarray:
    return SortedVector.of(y_sorted).as_array()


@register("hhat")
def hhat_batch(model: GaussianModel, ys: np.ndarray, ctx: EstimatorContext) -> np.ndarray:
    """High-noise approximation: prior order statistic means, ignores the observation."""
    ys = require_sorted_rows(ys, model.n)
    means = ctx.order_stat_means if ctx.order_stat_means is not None else order_statistic_means(model.n)
    return np.broadcast_to(hhat_estimate(model, means), ys.shape).copy()


@register("identity")
def identity_batch(model: GaussianModel, ys: np.ndarray, ctx: EstimatorContext) -> np.ndarray:
    """Baseline: returns the sorted observation unchanged."""
    return require_sorted_rows(ys, model.n).copy()


__all__ = ["hhat_estimate", "identity_estimate", "hhat_batch", "identity_batch"]
