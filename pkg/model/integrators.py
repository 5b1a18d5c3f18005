"""Posterior ordered-region functionals.

For an observation y and every permutation pi the integrators compute

    p(P_pi y) = P[X in sorted region | Y = P_pi y]
    m(P_pi y) = E[X * 1{X in sorted region} | Y = P_pi y]

which are the only model-dependent ingredients of the estimators. Two
strategies exist: a closed form for n = 2 and Monte Carlo for any n <= 8.

The Monte Carlo strategy draws one set of posterior samples W for y and uses
P_pi W as the samples for P_pi y (common random numbers). Each W lands in
the sorted region under exactly one permutation, namely its sorting order,
so one ``argsort`` per draw fills all n! cells at once and the region
probabilities of one observation add up to exactly one.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy import special as sc

from model.gaussian import GaussianModel, VectorLike
from prob_core.errors import ArgumentError, ConfigurationError
from prob_core.permutations import lexicographic_rank, permutation_array
from prob_core.special import std_normal_pdf
from prob_core.streams import INNER_STREAM, substream

logger = logging.getLogger(__name__)

DEFAULT_MC_SAMPLES = 4096


class IntegratorKind(str, Enum):
    EXACT_N2 = "exact_n2"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True, eq=False)
class RegionFunctionals:
    """Per-row, per-permutation region probabilities and restricted means.

    Shapes: ``probs`` and ``prob_se`` are ``(m, n!)``; ``means`` and
    ``mean_se`` are ``(m, n!, n)``. Standard errors are zero for the closed
    form and the noiseless limit.
    """

    probs: np.ndarray
    means: np.ndarray
    prob_se: np.ndarray
    mean_se: np.ndarray


@dataclass(frozen=True)
class RegionIntegrator:
    kind: IntegratorKind = IntegratorKind.MONTE_CARLO
    mc_samples: int = DEFAULT_MC_SAMPLES
    substream_seed: int = 0

    def __post_init__(self) -> None:
        try:
            kind = IntegratorKind(self.kind)
        except ValueError:
            allowed = ", ".join(k.value for k in IntegratorKind)
            raise ConfigurationError(f"Unknown integrator: {self.kind}. Available integrators: {allowed}") from None
        if int(self.mc_samples) < 1:
            raise ConfigurationError(f"mc_samples must be positive, got {self.mc_samples}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "mc_samples", int(self.mc_samples))
        object.__setattr__(self, "substream_seed", int(self.substream_seed))

    @classmethod
    def default_for(cls, n: int, mc_samples: int = DEFAULT_MC_SAMPLES, seed: int = 0) -> "RegionIntegrator":
        """Closed form for n = 2, Monte Carlo otherwise."""
        kind = IntegratorKind.EXACT_N2 if n == 2 else IntegratorKind.MONTE_CARLO
        return cls(kind=kind, mc_samples=mc_samples, substream_seed=seed)

    def check(self, model: GaussianModel) -> None:
        if self.kind is IntegratorKind.EXACT_N2 and model.n != 2:
            raise ConfigurationError(f"the exact_n2 integrator needs n = 2, got n = {model.n}")
        # also enforces the n <= 8 enumeration guard
        permutation_array(model.n)

    def functionals(self, model: GaussianModel, ys: np.ndarray, first_index: int = 0) -> RegionFunctionals:
        """Functionals for every row of ``ys`` (shape ``(m, n)``, any order).

        Row r uses the inner substream ``(substream_seed, INNER_STREAM,
        first_index + r)``, so results do not depend on how rows are batched.
        """
        self.check(model)
        arr = np.asarray(ys, dtype=float)
        if arr.ndim == 1:
            arr = arr[None, :]
        if arr.ndim != 2 or arr.shape[1] != model.n:
            raise ArgumentError(f"expected rows of length {model.n}, got shape {arr.shape}")
        if model.degenerate:
            return _noiseless(model, arr)
        if model.n == 1:
            return _scalar(model, arr)
        if self.kind is IntegratorKind.EXACT_N2:
            return _exact_n2(model, arr)
        return _monte_carlo(model, arr, self.mc_samples, self.substream_seed, first_index)


def _tie_weights(rows: np.ndarray) -> np.ndarray:
    # prod over tie groups of 1 / k_g!
    out = np.empty(rows.shape[0])
    for r, row in enumerate(rows):
        _, counts = np.unique(row, return_counts=True)
        out[r] = math.exp(-float(np.sum(sc.gammaln(counts + 1.0))))
    return out


def _noiseless(model: GaussianModel, ys: np.ndarray) -> RegionFunctionals:
    # sigma -> 0 limit: the posterior collapses onto P_pi y; a tie group of
    # size k splits its mass evenly over the k! orderings that sort it.
    perms = permutation_array(model.n)
    v = ys[:, perms]
    inside = np.all(v[:, :, 1:] >= v[:, :, :-1], axis=2)
    probs = inside * _tie_weights(ys)[:, None]
    means = v * probs[:, :, None]
    return RegionFunctionals(probs, means, np.zeros_like(probs), np.zeros_like(means))


def _scalar(model: GaussianModel, ys: np.ndarray) -> RegionFunctionals:
    # a scalar is always sorted: p = 1 and m is the posterior mean
    probs = np.ones((ys.shape[0], 1))
    means = (ys * model.shrinkage)[:, None, :]
    return RegionFunctionals(probs, means, np.zeros_like(probs), np.zeros_like(means))


def _exact_n2(model: GaussianModel, ys: np.ndarray) -> RegionFunctionals:
    # D = X2 - X1 ~ N(mu_D, 2 tau^2) is independent of S = X1 + X2.
    perms = permutation_array(2)
    mu = ys[:, perms] * model.shrinkage
    sd = math.sqrt(2.0 * model.posterior_var)
    mu_d = mu[:, :, 1] - mu[:, :, 0]
    z = mu_d / sd
    probs = sc.ndtr(z)
    e_d = mu_d * probs + sd * std_normal_pdf(z)
    e_s = (mu[:, :, 0] + mu[:, :, 1]) * probs
    means = np.stack([(e_s - e_d) / 2.0, (e_s + e_d) / 2.0], axis=2)
    return RegionFunctionals(probs, means, np.zeros_like(probs), np.zeros_like(means))


def _monte_carlo(
    model: GaussianModel,
    ys: np.ndarray,
    samples: int,
    seed: int,
    first_index: int,
) -> RegionFunctionals:
    n = model.n
    nf = math.factorial(n)
    tau = math.sqrt(model.posterior_var)
    m = ys.shape[0]

    probs = np.empty((m, nf))
    means = np.empty((m, nf, n))
    prob_se = np.empty((m, nf))
    mean_se = np.empty((m, nf, n))

    for r in range(m):
        rng = substream(seed, INNER_STREAM, first_index + r)
        w = ys[r] * model.shrinkage + tau * rng.standard_normal((samples, n))
        order = np.argsort(w, axis=1, kind="stable")
        ranks = lexicographic_rank(order)
        s = np.take_along_axis(w, order, axis=1)

        p = np.bincount(ranks, minlength=nf) / samples
        first = np.empty((nf, n))
        second = np.empty((nf, n))
        for j in range(n):
            first[:, j] = np.bincount(ranks, weights=s[:, j], minlength=nf) / samples
            second[:, j] = np.bincount(ranks, weights=s[:, j] ** 2, minlength=nf) / samples

        probs[r] = p
        means[r] = first
        prob_se[r] = np.sqrt(p * (1.0 - p) / samples)
        mean_se[r] = np.sqrt(np.maximum(second - first ** 2, 0.0) / samples)

    logger.debug("monte carlo functionals: rows=%d inner=%d n=%d", m, samples, n)
    return RegionFunctionals(probs, means, prob_se, mean_se)


def permutation_functionals(
    model: GaussianModel,
    y: VectorLike,
    integ: RegionIntegrator,
    call_index: int = 0,
) -> RegionFunctionals:
    """Functionals of a single observation; leading row axis kept."""
    return integ.functionals(model, model.check_vector(y)[None, :], first_index=call_index)


def ordered_region_prob(
    model: GaussianModel,
    y: VectorLike,
    integ: RegionIntegrator,
    call_index: int = 0,
) -> float:
    """P[X_1 <= ... <= X_n | Y = y]."""
    return float(permutation_functionals(model, y, integ, call_index).probs[0, 0])


def restricted_mean(
    model: GaussianModel,
    y: VectorLike,
    integ: RegionIntegrator,
    call_index: int = 0,
) -> np.ndarray:
    """E[X * 1{X sorted} | Y = y], componentwise."""
    return permutation_functionals(model, y, integ, call_index).means[0, 0].copy()


def posterior_sorted_mean(
    model: GaussianModel,
    y: VectorLike,
    samples: Optional[int] = None,
    seed: int = 0,
) -> np.ndarray:
    """Monte Carlo E[sort(X) | Y = y] from plain posterior draws.

    For exchangeable (X, Y) this equals the conditional mean of the sorted
    vector given the sorted observation, so it is an independent check of
    the permutation sum.
    """
    arr = model.check_vector(y)
    if model.degenerate:
        return np.sort(arr, kind="stable")
    rng = substream(seed, INNER_STREAM, 0)
    count = samples or DEFAULT_MC_SAMPLES
    w = arr * model.shrinkage + math.sqrt(model.posterior_var) * rng.standard_normal((count, model.n))
    return np.sort(w, axis=1).mean(axis=0)


__all__ = [
    "DEFAULT_MC_SAMPLES",
    "IntegratorKind",
    "RegionFunctionals",
    "RegionIntegrator",
    "permutation_functionals",
    "ordered_region_prob",
    "restricted_mean",
    "posterior_sorted_mean",
]
