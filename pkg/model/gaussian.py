"""Gaussian prior N(0, I_n) and channel Y | X = x ~ N(x, sigma^2 I_n)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from prob_core.errors import ArgumentError, ConfigurationError
from prob_core.permutations import SortedVector

VectorLike = Union[SortedVector, np.ndarray, list, tuple]


@dataclass(frozen=True)
class GaussianModel:
    n: int
    sigma: float

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or int(self.n) != self.n or int(self.n) < 1:
            raise ConfigurationError(f"n must be a positive integer, got {self.n!r}")
        sigma = float(self.sigma)
        if not math.isfinite(sigma) or sigma < 0.0:
            raise ConfigurationError(f"sigma must be finite and nonnegative, got {self.sigma!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "sigma", sigma)

    @property
    def shrinkage(self) -> float:
        """Posterior mean coefficient 1 / (1 + sigma^2)."""
        return 1.0 / (1.0 + self.sigma ** 2)

    @property
    def posterior_var(self) -> float:
        return self.sigma ** 2 / (1.0 + self.sigma ** 2)

    @property
    def degenerate(self) -> bool:
        """True when the posterior is a point mass (noiseless channel)."""
        return self.sigma == 0.0

    def check_vector(self, y: VectorLike) -> np.ndarray:
        arr = y.as_array() if isinstance(y, SortedVector) else np.asarray(y, dtype=float)
        if arr.ndim != 1 or arr.shape[0] != self.n:
            raise ArgumentError(f"expected a vector of length {self.n}, got shape {arr.shape}")
        return arr


@dataclass(frozen=True, eq=False)
class PosteriorParams:
    """X | Y = y ~ N(mean, component_var * I); components independent."""

    mean: np.ndarray
    component_var: float


def posterior_params(model: GaussianModel, y: VectorLike) -> PosteriorParams:
    arr = model.check_vector(y)
    return PosteriorParams(mean=arr * model.shrinkage, component_var=model.posterior_var)


def sample_pair(model: GaussianModel, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """One draw x ~ N(0, I_n) and y = x + sigma * z."""
    x, y = sample_pairs(model, rng, 1)
    return x[0], y[0]


def sample_pairs(model: GaussianModel, rng: np.random.Generator, count: int) -> Tuple[np.ndarray, np.ndarray]:
    """``count`` independent pairs as ``(count, n)`` arrays.

    X is drawn first, then Z, so a given generator state always yields the
    same pairs.
    """
    x = rng.standard_normal((count, model.n))
    z = rng.standard_normal((count, model.n))
    return x, x + model.sigma * z


__all__ = ["GaussianModel", "PosteriorParams", "posterior_params", "sample_pair", "sample_pairs"]
