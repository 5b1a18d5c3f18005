"""Experiment parameters for the Monte Carlo harness."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional, Tuple

from config import DEFAULT_SEED
from estimators import EstimatorKind, FixedPointOptions
from model.integrators import DEFAULT_MC_SAMPLES, IntegratorKind, RegionIntegrator
from prob_core.errors import ConfigurationError

DEFAULT_ESTIMATORS: Tuple[str, ...] = ("optimal", "fhat", "hhat", "mle")
INTEGRATOR_CHOICES = ("auto", IntegratorKind.EXACT_N2.value, IntegratorKind.MONTE_CARLO.value)


def default_outer_samples(n: int) -> int:
    # closed-form inner integrals for n = 2 leave room for more outer draws
    return 100_000 if n == 2 else 20_000


@dataclass(frozen=True)
class EvalConfig:
    n: int
    sigma_grid: Tuple[float, ...]
    outer_samples: int = 20_000
    estimators: Tuple[str, ...] = DEFAULT_ESTIMATORS
    integrator: str = "auto"
    inner_samples: int = DEFAULT_MC_SAMPLES
    seed: int = DEFAULT_SEED
    chunks: int = 1
    # estimators listed as "mle" are skipped above this sigma when set
    mle_max_sigma: Optional[float] = None
    fixed_point: FixedPointOptions = field(default_factory=FixedPointOptions)

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or int(self.n) != self.n or int(self.n) < 1:
            raise ConfigurationError(f"n must be a positive integer, got {self.n!r}")
        grid = tuple(float(s) for s in self.sigma_grid)
        if not grid:
            raise ConfigurationError("sigma grid is empty")
        if any(not math.isfinite(s) or s < 0 for s in grid):
            raise ConfigurationError(f"sigma values must be finite and nonnegative: {grid}")
        if int(self.outer_samples) < 1:
            raise ConfigurationError(f"outer_samples must be positive, got {self.outer_samples}")
        if int(self.chunks) < 1:
            raise ConfigurationError(f"chunks must be positive, got {self.chunks}")
        if int(self.outer_samples) % int(self.chunks):
            raise ConfigurationError(
                f"outer_samples={self.outer_samples} does not split into {self.chunks} equal chunks"
            )
        if self.integrator not in INTEGRATOR_CHOICES:
            raise ConfigurationError(
                f"Unknown integrator: {self.integrator}. Available integrators: {', '.join(INTEGRATOR_CHOICES)}"
            )
        if self.integrator == IntegratorKind.EXACT_N2.value and int(self.n) != 2:
            raise ConfigurationError(f"the exact_n2 integrator needs n = 2, got n = {self.n}")
        tags = tuple(str(t) for t in self.estimators)
        for tag in tags:
            EstimatorKind(tag)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "sigma_grid", grid)
        object.__setattr__(self, "outer_samples", int(self.outer_samples))
        object.__setattr__(self, "chunks", int(self.chunks))
        object.__setattr__(self, "estimators", tags)
        object.__setattr__(self, "seed", int(self.seed))

    @property
    def chunk_size(self) -> int:
        return self.outer_samples // self.chunks

    def region_integrator(self) -> RegionIntegrator:
        if self.integrator == "auto":
            return RegionIntegrator.default_for(self.n, self.inner_samples, self.seed)
        return RegionIntegrator(kind=IntegratorKind(self.integrator), mc_samples=self.inner_samples, substream_seed=self.seed)

    def estimators_at(self, sigma: float) -> Tuple[str, ...]:
        if self.mle_max_sigma is None or sigma <= self.mle_max_sigma:
            return self.estimators
        return tuple(t for t in self.estimators if t != "mle")

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["sigma_grid"] = list(self.sigma_grid)
        data["estimators"] = list(self.estimators)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EvalConfig":
        values = dict(data)
        if isinstance(values.get("fixed_point"), dict):
            values["fixed_point"] = FixedPointOptions(**values["fixed_point"])
        values["sigma_grid"] = tuple(values.get("sigma_grid") or ())
        if "estimators" in values:
            values["estimators"] = tuple(values["estimators"])
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(values) - known)
        if unknown:
            raise ConfigurationError(f"unknown configuration keys: {', '.join(unknown)}")
        return cls(**values)


__all__ = ["DEFAULT_ESTIMATORS", "INTEGRATOR_CHOICES", "EvalConfig", "default_outer_samples"]
