"""Closed-form bounds and approximations for the sorted Gaussian vector.

Everything here is a direct formula; factorials and gamma ratios go through
``gammaln`` so n in the thousands stays finite.
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy import special as sc

from prob_core.errors import DomainError
from prob_core.special import std_normal_quantile

# |1 - eps/4| below this switches the power-sum bound to its log limit
POWER_SUM_LOG_WINDOW = 1e-9


def _check_positive(n: int, minimum: int = 1) -> int:
    if isinstance(n, bool) or int(n) != n or int(n) < minimum:
        raise DomainError(f"n must be an integer >= {minimum}, got {n}")
    return int(n)


def _check_index(i: int, n: int) -> None:
    n = _check_positive(n)
    if isinstance(i, bool) or int(i) != i or not 1 <= int(i) <= n:
        raise DomainError(f"index i must satisfy 1 <= i <= n = {n}, got {i}")


def _plotting_positions(n: int) -> np.ndarray:
    return np.arange(1, n + 1) / (n + 1.0)


def quantile_mean_approx(i: int, n: int) -> float:
    """Phi^-1(i / (n + 1)), the quantile approximation of E[X_(i)]."""
    _check_index(i, n)
    return float(std_normal_quantile(i / (n + 1.0)))


def quantile_mean_error_bound(i: int, n: int) -> float:
    _check_index(i, n)
    j = n + 1 - i
    inner = 2.0 / i + 2.0 / j + abs(1.0 / i - 1.0 / (2.0 * j)) ** 2
    return math.sqrt(math.pi / 2.0) * math.sqrt(inner)


def var_approx(n: int) -> float:
    """n - sum_i Phi^-1(i / (n + 1))^2."""
    n = _check_positive(n)
    q = np.asarray(std_normal_quantile(_plotting_positions(n)))
    return float(n - np.sum(q ** 2))


def var_approx_uniform_form(n: int) -> float:
    """n * (1 - E|Phi^-1(U_n)|^2), U_n uniform on {1/(n+1), ..., n/(n+1)}."""
    n = _check_positive(n)
    q = np.asarray(std_normal_quantile(_plotting_positions(n)))
    return float(n * (1.0 - np.mean(q ** 2)))


def var_approx_error_bound(n: int) -> float:
    n = _check_positive(n, minimum=2)
    log_term = 1.5 * math.pi * (2.0 * math.log(n) + 1.0 / n + 1.0)
    return 2.0 * math.sqrt(18.0 * (n + 1) * log_term) + log_term


def chi_variance(n: int) -> float:
    """Var(||X||) = n - 2 (Gamma((n+1)/2) / Gamma(n/2))^2 for X ~ N(0, I_n)."""
    n = _check_positive(n)
    log_ratio = sc.gammaln((n + 1) / 2.0) - sc.gammaln(n / 2.0)
    return float(n - 2.0 * math.exp(2.0 * log_ratio))


def _factorial_power(n: int) -> float:
    # (n!)^(-2/n)
    return math.exp(-2.0 * float(sc.gammaln(n + 1.0)) / n)


def max_entropy_mmse_bound(n: int, sigma: float) -> float:
    """(n!)^(-2/n) * n sigma^2 / (1 + sigma^2); sigma = inf gives the prior limit."""
    n = _check_positive(n)
    sigma = float(sigma)
    if math.isnan(sigma) or sigma < 0.0:
        raise DomainError(f"sigma must be nonnegative, got {sigma}")
    scalar_mmse = 1.0 if math.isinf(sigma) else sigma ** 2 / (1.0 + sigma ** 2)
    return _factorial_power(n) * n * scalar_mmse


def max_entropy_var_bound(n: int) -> float:
    n = _check_positive(n)
    return n * _factorial_power(n)


def sorted_entropy(n: int) -> float:
    """Differential entropy (nats) of the sorted standard Gaussian vector."""
    n = _check_positive(n)
    return 0.5 * n * math.log(2.0 * math.pi * math.e) - float(sc.gammaln(n + 1.0))


def quantile_power_sum(n: int, eps: float) -> float:
    """sum_i |Phi^-1(i / (n + 1))|^(2 eps)."""
    n = _check_positive(n)
    if eps < 0:
        raise DomainError(f"eps must be nonnegative, got {eps}")
    q = np.abs(np.asarray(std_normal_quantile(_plotting_positions(n))))
    # 0 ** 0 == 1 keeps the eps = 0 sum equal to n
    return float(np.sum(q ** (2.0 * eps)))


def quantile_power_sum_bound(n: int, eps: float) -> float:
    n = _check_positive(n)
    eps = float(eps)
    if math.isnan(eps) or eps < 0.0:
        raise DomainError(f"eps must be nonnegative, got {eps}")
    half = math.ceil((n + 1) / 2.0)
    e = 1.0 - eps / 4.0
    if abs(e) < POWER_SUM_LOG_WINDOW:
        ratio = math.log(half)
    else:
        ratio = (half ** e - 1.0) / e
    return 2.0 ** (11.0 * eps / 4.0 + 1.0) * (n + 1) ** (eps / 4.0) * (1.0 + ratio)


def power_sum_table(n: int, eps_values: Sequence[float]) -> dict:
    """``{eps: (sum, bound)}`` for the given exponents."""
    return {float(e): (quantile_power_sum(n, e), quantile_power_sum_bound(n, e)) for e in eps_values}


__all__ = [
    "POWER_SUM_LOG_WINDOW",
    "quantile_mean_approx",
    "quantile_mean_error_bound",
    "var_approx",
    "var_approx_uniform_form",
    "var_approx_error_bound",
    "chi_variance",
    "max_entropy_mmse_bound",
    "max_entropy_var_bound",
    "sorted_entropy",
    "quantile_power_sum",
    "quantile_power_sum_bound",
    "power_sum_table",
]
