"""Maximum-likelihood estimate under the permutation-mixture likelihood.

The likelihood of a sorted observation y given t is the mixture
sum_pi f_{Y|X}(P_pi y | t). Its stationary points in the sorted region
satisfy t = map(t) with

    map(t) = sum_pi w_pi(t) P_pi y,   w(t) = softmax_pi((P_pi y)^T t / sigma^2)

The map is iterated with damping from up to three starting points (y, the
prior order statistic means, zero). A point is accepted when
sup|map(t) - t| < tolerance and t is nondecreasing; among accepted points
the one with the highest mixture likelihood wins. When nothing is accepted
the estimate falls back to y.
"""
from __future__ import annotations

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.special import logsumexp

from bounds.order_stats import order_statistic_means
from estimators.registry import EstimatorContext, FixedPointOptions, register
from model.gaussian import GaussianModel, VectorLike
from prob_core.errors import DomainError
from prob_core.permutations import permutation_array, require_sorted_rows

logger = logging.getLogger(__name__)

# keeps the (rows, n!, n) permutation stack around a few MB
_STACK_BUDGET = 1 << 18


def _stack(ys: np.ndarray, n: int) -> np.ndarray:
    return ys[:, permutation_array(n)]


def _noise_var(model: GaussianModel) -> float:
    if model.degenerate:
        raise DomainError("the mixture likelihood needs sigma > 0")
    return model.sigma ** 2


def _apply_map(stack: np.ndarray, t: np.ndarray, s2: float) -> np.ndarray:
    logits = np.einsum("mkj,mj->mk", stack, t) / s2
    logits -= logits.max(axis=1, keepdims=True)
    w = np.exp(logits)
    w /= w.sum(axis=1, keepdims=True)
    return np.einsum("mk,mkj->mj", w, stack)


def _log_likelihood(stack: np.ndarray, t: np.ndarray, s2: float) -> np.ndarray:
    n = stack.shape[2]
    sq = np.sum((stack - t[:, None, :]) ** 2, axis=2)
    return logsumexp(-sq / (2.0 * s2), axis=1) - 0.5 * n * math.log(2.0 * math.pi * s2)


def _iterate(stack: np.ndarray, start: np.ndarray, s2: float, opts: FixedPointOptions) -> Tuple[np.ndarray, np.ndarray]:
    t = np.array(start, dtype=float, copy=True)
    residual = np.full(t.shape[0], np.inf)
    active = np.arange(t.shape[0])
    for _ in range(opts.max_iters):
        step = _apply_map(stack[active], t[active], s2) - t[active]
        r = np.max(np.abs(step), axis=1)
        residual[active] = r
        moving = r >= opts.tolerance
        # converged rows keep the point whose residual was measured
        t[active[moving]] += opts.damping * step[moving]
        active = active[moving]
        if active.size == 0:
            break
    return t, residual


def _mle_rows(model: GaussianModel, ys: np.ndarray, opts: FixedPointOptions, hhat: np.ndarray) -> np.ndarray:
    s2 = model.sigma ** 2
    stack = _stack(ys, model.n)
    starts = [ys, np.broadcast_to(hhat, ys.shape), np.zeros_like(ys)][: opts.restarts]

    best = ys.copy()
    best_ll = np.full(ys.shape[0], -np.inf)
    accepted = np.zeros(ys.shape[0], dtype=bool)
    for k, start in enumerate(starts):
        t, residual = _iterate(stack, start, s2, opts)
        ok = (residual < opts.tolerance) & np.all(t[:, 1:] >= t[:, :-1], axis=1)
        ll = _log_likelihood(stack, t, s2)
        better = ok & (ll > best_ll)
        best[better] = t[better]
        best_ll[better] = ll[better]
        accepted |= ok
        logger.debug("mle restart %d: accepted %d of %d rows", k, int(ok.sum()), ys.shape[0])

    fallback = int((~accepted).sum())
    if fallback:
        logger.warning("mle: no accepted fixed point for %d of %d rows, returning the observation", fallback, ys.shape[0])
    return best


@register("mle")
def mle_batch(model: GaussianModel, ys: np.ndarray, ctx: EstimatorContext) -> np.ndarray:
    """Maximum-likelihood fixed point under the permutation mixture, falls back to y."""
    ys = require_sorted_rows(ys, model.n)
    if model.degenerate:
        return ys.copy()
    hhat = ctx.order_stat_means if ctx.order_stat_means is not None else order_statistic_means(model.n)
    rows = max(1, _STACK_BUDGET // (math.factorial(model.n) * model.n))
    out = np.empty_like(ys)
    for lo in range(0, ys.shape[0], rows):
        out[lo:lo + rows] = _mle_rows(model, ys[lo:lo + rows], ctx.fixed_point, hhat)
    return out


def mle_estimate(
    model: GaussianModel,
    y_sorted: VectorLike,
    opts: Optional[FixedPointOptions] = None,
    order_stat_means: Optional[np.ndarray] = None,
) -> np.ndarray:
    ys = require_sorted_rows(model.check_vector(y_sorted), model.n)
    ctx = EstimatorContext(fixed_point=opts or FixedPointOptions(), order_stat_means=order_stat_means)
    return mle_batch(model, ys, ctx)[0]


def mle_fixed_point_map(model: GaussianModel, y_sorted: VectorLike, t: VectorLike) -> np.ndarray:
    """One undamped application of the stationarity map at ``t``."""
    y = model.check_vector(y_sorted)
    return _apply_map(_stack(y[None, :], model.n), model.check_vector(t)[None, :], _noise_var(model))[0]


def mixture_log_likelihood(model: GaussianModel, y_sorted: VectorLike, t: VectorLike) -> float:
    """log sum_pi f_{Y|X}(P_pi y | t) for sigma > 0."""
    y = model.check_vector(y_sorted)
    stack = _stack(y[None, :], model.n)
    return float(_log_likelihood(stack, model.check_vector(t)[None, :], _noise_var(model))[0])


__all__ = ["mle_batch", "mle_estimate", "mle_fixed_point_map", "mixture_log_likelihood"]
