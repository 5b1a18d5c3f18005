from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np

from model.gaussian import GaussianModel
from model.integrators import RegionFunctionals, RegionIntegrator
from prob_core.errors import ConfigurationError


@dataclass(frozen=True)
class FixedPointOptions:
    max_iters: int = 500
    tolerance: float = 1e-8
    restarts: int = 3
    damping: float = 0.5

    def __post_init__(self) -> None:
        if int(self.max_iters) < 1:
            raise ConfigurationError(f"max_iters must be positive, got {self.max_iters}")
        if not self.tolerance > 0:
            raise ConfigurationError(f"tolerance must be > 0, got {self.tolerance}")
        if not 1 <= int(self.restarts) <= 3:
            raise ConfigurationError(f"restarts must be 1, 2 or 3, got {self.restarts}")
        if not 0 < self.damping <= 1:
            raise ConfigurationError(f"damping must be in (0, 1], got {self.damping}")


@dataclass
class EstimatorContext:
    """Everything an estimator needs besides the model and the observations.

    ``first_index`` is the global index of the first row of the batch; Monte
    Carlo integrators derive row substreams from it. Region functionals are
    cached per batch so estimators sharing a context share the inner draws.
    """

    integrator: Optional[RegionIntegrator] = None
    fixed_point: FixedPointOptions = field(default_factory=FixedPointOptions)
    order_stat_means: Optional[np.ndarray] = None
    first_index: int = 0
    _region_cache: Dict[Tuple[Any, ...], RegionFunctionals] = field(default_factory=dict, repr=False)

    def region(self, model: GaussianModel, ys: np.ndarray) -> RegionFunctionals:
        key = (model, ys.shape, ys.tobytes())
        hit = self._region_cache.get(key)
        if hit is None:
            if self.integrator is None:
                raise ConfigurationError("this estimator needs a region integrator")
            hit = self.integrator.functionals(model, ys, first_index=self.first_index)
            self._region_cache[key] = hit
        return hit


# fn(model, ys, ctx) -> estimates, ys and estimates both (m, n)
EstimatorFn = Callable[[GaussianModel, np.ndarray, EstimatorContext], np.ndarray]

Registry: Dict[str, EstimatorFn] = {}


def register(name: str):
    def _wrap(fn: EstimatorFn):
        Registry[name] = fn
        return fn
    return _wrap


def get_estimator(name: str) -> EstimatorFn:
    if name not in Registry:
        available = ", ".join(sorted(Registry.keys())) or "(empty)"
        raise ConfigurationError(f"Unknown estimator: {name}. Available estimators: {available}")
    return Registry[name]


@dataclass(frozen=True)
class EstimatorKind:
    """Registered estimator tag, validated against the registry."""

    tag: str

    def __post_init__(self) -> None:
        get_estimator(self.tag)

    def __str__(self) -> str:
        return self.tag


def describe(name: str) -> str:
    doc = (get_estimator(name).__doc__ or "").strip()
    return doc.splitlines()[0] if doc else ""


__all__ = [
    "FixedPointOptions",
    "EstimatorContext",
    "EstimatorFn",
    "Registry",
    "EstimatorKind",
    "register",
    "get_estimator",
    "describe",
]
