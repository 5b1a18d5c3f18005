"""Regularity condition of the Bayesian Cramer-Rao bound for sorted data.

For n = 2 and sigma = 1 the expected score at Y = 0 is

    -2 * n! * (4 pi)^(n/2) * int_{x sorted} x f_{Y|X}(0 | x) f_X(x) dx

and it is not zero, so the bound's regularity assumption fails. Since
f_{Y|X}(0 | x) f_X(x) = (4 pi)^(-n/2) N(x; 0, I/2) the prefactor cancels and
the vector reduces to -2 E[sort(W)], W ~ N(0, I/2). ``regularity_check``
estimates that by sorting and averaging; ``regularity_quadrature``
integrates the original form directly over the sorted half-plane.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict

import numpy as np
from scipy import integrate

from evaluation.config import EvalConfig
from evaluation.harness import standard_normals
from evaluation.results import MonteCarloResult
from model.gaussian import GaussianModel
from prob_core.errors import ConfigurationError
from prob_core.special import std_normal_pdf
from prob_core.streams import REGULARITY_STREAM

EXPECTED_REGULARITY = np.array([2.0, -2.0]) / math.sqrt(2.0 * math.pi)
VIOLATION_SE = 5.0
# Gaussian weight exp(-|x|^2) is below 1e-27 outside this box
QUADRATURE_LIMIT = 8.0


@dataclass(frozen=True, eq=False)
class RegularityResult:
    values: np.ndarray
    std_errors: np.ndarray
    samples: int
    method: str

    @property
    def deviation(self) -> np.ndarray:
        return self.values - EXPECTED_REGULARITY

    @property
    def violated(self) -> bool:
        """True when the vector is away from zero by more than 5 standard errors."""
        threshold = np.maximum(VIOLATION_SE * self.std_errors, 1e-9)
        return bool(np.any(np.abs(self.values) > threshold))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "method": self.method,
            "components": self.values.tolist(),
            "std_errors": self.std_errors.tolist(),
            "samples": self.samples,
            "expected": EXPECTED_REGULARITY.tolist(),
            "deviation": self.deviation.tolist(),
            "component_sum": float(self.values.sum()),
            "regularity_violated": self.violated,
        }


def _check_instance(model: GaussianModel) -> None:
    if model.n != 2 or model.sigma != 1.0:
        raise ConfigurationError(
            f"the regularity counterexample is defined for n = 2, sigma = 1; got n = {model.n}, sigma = {model.sigma:g}"
        )


def regularity_check(model: GaussianModel, config: EvalConfig) -> RegularityResult:
    _check_instance(model)
    w = math.sqrt(0.5) * standard_normals(config.seed, REGULARITY_STREAM, model.n, 0, config.outer_samples)
    scores = -2.0 * np.sort(w, axis=1)
    parts = [MonteCarloResult.from_samples(scores[:, k]) for k in range(model.n)]
    return RegularityResult(
        values=np.array([p.mean for p in parts]),
        std_errors=np.array([p.std_error for p in parts]),
        samples=config.outer_samples,
        method="monte_carlo",
    )


def regularity_quadrature(epsabs: float = 1e-11, epsrel: float = 1e-10) -> RegularityResult:
    n = 2
    prefactor = -2.0 * math.factorial(n) * (4.0 * math.pi) ** (n / 2.0)
    lim = QUADRATURE_LIMIT

    def integrand(x2: float, x1: float, k: int) -> float:
        # sigma = 1: f_{Y|X}(0 | x) and f_X(x) are the same product density
        dens = (std_normal_pdf(x1) * std_normal_pdf(x2)) ** 2
        return (x1, x2)[k] * dens

    values = []
    for k in range(n):
        val, _ = integrate.dblquad(
            integrand, -lim, lim, lambda x1: x1, lambda x1: lim, args=(k,), epsabs=epsabs, epsrel=epsrel
        )
        values.append(prefactor * val)
    return RegularityResult(values=np.array(values), std_errors=np.zeros(n), samples=0, method="quadrature")


__all__ = [
    "EXPECTED_REGULARITY",
    "RegularityResult",
    "regularity_check",
    "regularity_quadrature",
]
