"""Full-budget reproduction runs. Set ORDSTAT_SLOW=1 to enable.

Every Monte Carlo number from the harness is compared with an oracle that
shares no code with the package: a closed form for n = 2 and brute-force
posterior sampling for n >= 3.

Published figure values, kept for reference. Several of them are not
reachable for X ~ N(0, I), Y = X + sigma Z (see DESIGN.md):

    n  quantity        sigma  published  oracle
    2  mse optimal     1      0.7462     0.7813
    2  mse optimal     2      1.1046     1.1506
    2  delta_up        1      0.5508     0.5753
    3  delta_up        1      1.6230     1.90
    3  mse optimal     1      0.8928     0.98
    3  mse fhat        1      1.7785     1.36
    4  mse optimal     1      0.9922     1.09
    4  mse optimal     2      1.3905     1.48
    4  mse fhat        2      3.3125     3.00
"""
import itertools
import math
import os

import numpy as np
import pytest
from scipy.stats import norm

from estimators import optimal_estimate
from evaluation import EvalConfig, MonteCarloResult, delta_up, mmse_sweep, mse_of_estimator, pooled_se
from model import GaussianModel, IntegratorKind, RegionIntegrator

pytestmark = [
    pytest.mark.slow,
    pytest.mark.skipif(os.environ.get("ORDSTAT_SLOW") != "1", reason="set ORDSTAT_SLOW=1 for acceptance runs"),
]

ORACLE_BATCH = 200
# bias left by a finite number of inner draws in the brute-force oracles
INNER_FLOOR = 0.01


def _within(res, expected, tol):
    return abs(res.mean - expected) <= max(tol, 3.0 * res.std_error)


def _agrees(res, oracle, floor=INNER_FLOOR):
    return abs(res.mean - oracle.mean) <= 4.0 * pooled_se(res, oracle) + floor


def _joint_draws(rng, n, sigma, count):
    x = rng.standard_normal((count, n))
    return x, x + sigma * rng.standard_normal((count, n))


def _n2_conditional_mean(ys, sigma):
    # posterior X ~ N(c y, tau^2 I); E[max] = mid + d (Phi(d/s) - 1/2) + s phi(d/s) with D = X2 - X1 ~ N(d, s^2)
    c = 1.0 / (1.0 + sigma ** 2)
    s = math.sqrt(2.0 * sigma ** 2 * c)
    mid = c * (ys[:, 0] + ys[:, 1]) / 2.0
    d = c * (ys[:, 1] - ys[:, 0])
    upper = mid + d * (norm.cdf(d / s) - 0.5) + s * norm.pdf(d / s)
    return np.column_stack([2.0 * mid - upper, upper])


def _n2_region_prob(ys, sigma):
    c = 1.0 / (1.0 + sigma ** 2)
    return norm.cdf(c * (ys[:, 1] - ys[:, 0]) / math.sqrt(2.0 * sigma ** 2 * c))


def _posterior_draws(rng, means, sigma, inner):
    c = 1.0 / (1.0 + sigma ** 2)
    tau = math.sqrt(sigma ** 2 * c)
    return c * means[:, None, :] + tau * rng.standard_normal((means.shape[0], inner, means.shape[1]))


def _sorted_posterior_mean(rng, ys, sigma, inner):
    out = np.empty_like(ys)
    for lo in range(0, ys.shape[0], ORACLE_BATCH):
        w = _posterior_draws(rng, ys[lo:lo + ORACLE_BATCH], sigma, inner)
        out[lo:lo + ORACLE_BATCH] = np.sort(w, axis=2).mean(axis=1)
    return out


def _region_probs(rng, ys, sigma, inner):
    """p[r, k] = P[posterior at P_k y is nondecreasing], one fresh sample set per permutation."""
    perms = [list(p) for p in itertools.permutations(range(ys.shape[1]))]
    probs = np.empty((ys.shape[0], len(perms)))
    for k, perm in enumerate(perms):
        for lo in range(0, ys.shape[0], ORACLE_BATCH):
            w = _posterior_draws(rng, ys[lo:lo + ORACLE_BATCH][:, perm], sigma, inner)
            probs[lo:lo + ORACLE_BATCH, k] = np.all(np.diff(w, axis=2) >= 0.0, axis=2).mean(axis=1)
    return perms, probs


def _oracle_mse(x, estimate):
    return MonteCarloResult.from_samples(np.sum((np.sort(x, axis=1) - estimate) ** 2, axis=1))


def optimal_oracle(n, sigma, count, inner=1024, seed=2024):
    rng = np.random.default_rng(seed)
    x, y = _joint_draws(rng, n, sigma, count)
    ys = np.sort(y, axis=1)
    if n == 2:
        return _oracle_mse(x, _n2_conditional_mean(ys, sigma))
    return _oracle_mse(x, _sorted_posterior_mean(rng, ys, sigma, inner))


def fhat_oracle(n, sigma, count, inner=512, seed=2025):
    rng = np.random.default_rng(seed)
    x, y = _joint_draws(rng, n, sigma, count)
    ys = np.sort(y, axis=1)
    perms, probs = _region_probs(rng, ys, sigma, inner)
    c = 1.0 / (1.0 + sigma ** 2)
    est = sum(probs[:, k, None] * c * ys[:, perm] for k, perm in enumerate(perms))
    return _oracle_mse(x, est)


def delta_up_oracle(n, sigma, count, inner=512, seed=2026):
    rng = np.random.default_rng(seed)
    x, y = _joint_draws(rng, n, sigma, count)
    ys = np.sort(y, axis=1)
    if n == 2:
        p = _n2_region_prob(ys, sigma)
        spread = 2.0 * p * (1.0 - p)
    else:
        _, probs = _region_probs(rng, ys, sigma, inner)
        # p(1-p) of a sample mean is biased low by (inner-1)/inner
        spread = np.sum(probs * (1.0 - probs), axis=1) * inner / (inner - 1.0)
    return MonteCarloResult.from_samples(np.sum(x ** 2, axis=1) * spread)


def test_optimal_n2_grid():
    # Arrange
    sigmas = (0.25, 0.5, 1.0, 2.0, 5.0)
    cfg = EvalConfig(n=2, sigma_grid=sigmas, outer_samples=100_000, estimators=("optimal", "hhat"), chunks=4)

    # Act
    table = mmse_sweep(cfg)

    # Assert
    for row, sigma in zip(table.rows, sigmas):
        assert _agrees(row.results["optimal"], optimal_oracle(2, sigma, 1_000_000), floor=0.0)
        assert _within(row.results["hhat"], 1.3634, 0.01)


@pytest.mark.parametrize("n,sigma", [(3, 1.0), (4, 1.0), (4, 2.0)])
def test_optimal_against_sorted_posterior_oracle(n, sigma):
    cfg = EvalConfig(n=n, sigma_grid=(sigma,), outer_samples=20_000, estimators=("optimal",), chunks=4)
    res = mse_of_estimator(GaussianModel(n, sigma), "optimal", cfg)
    assert _agrees(res, optimal_oracle(n, sigma, 8000))


@pytest.mark.parametrize("n,sigma", [(3, 1.0), (4, 2.0)])
def test_fhat_against_region_probability_oracle(n, sigma):
    cfg = EvalConfig(n=n, sigma_grid=(sigma,), outer_samples=20_000, estimators=("fhat",), chunks=4)
    res = mse_of_estimator(GaussianModel(n, sigma), "fhat", cfg)
    assert _agrees(res, fhat_oracle(n, sigma, 4000))


def test_mle_n2_small_noise():
    cfg = EvalConfig(n=2, sigma_grid=(0.25,), outer_samples=100_000, estimators=("mle",), chunks=4)
    res = mse_of_estimator(GaussianModel(2, 0.25), "mle", cfg)
    assert _within(res, 0.128, 0.02)


@pytest.mark.parametrize("n,sigma", [(2, 1.0), (2, 5.0), (2, 50.0), (3, 1.0), (3, 50.0)])
def test_delta_up_curve(n, sigma):
    cfg = EvalConfig(n=n, sigma_grid=(sigma,), outer_samples=100_000 if n == 2 else 20_000, estimators=(), chunks=4)
    res = delta_up(GaussianModel(n, sigma), cfg)
    oracle = delta_up_oracle(n, sigma, 1_000_000 if n == 2 else 4000)
    assert _agrees(res, oracle, floor=0.0 if n == 2 else INNER_FLOOR)


@pytest.mark.parametrize("n,sigma,published", [(2, 5.0, 0.9619), (2, 50.0, 0.9995), (3, 50.0, 2.499)])
def test_delta_up_matches_published_high_noise_values(n, sigma, published):
    cfg = EvalConfig(n=n, sigma_grid=(sigma,), outer_samples=100_000 if n == 2 else 20_000, estimators=(), chunks=4)
    assert _within(delta_up(GaussianModel(n, sigma), cfg), published, 0.02)


def test_dominance_over_grid():
    cfg = EvalConfig(n=3, sigma_grid=tuple(np.round(np.arange(0.25, 3.01, 0.25), 2)), outer_samples=20_000, chunks=4)
    table = mmse_sweep(cfg)
    for row in table.rows:
        opt = row.results["optimal"]
        for tag in ("fhat", "hhat"):
            other = row.results[tag]
            assert opt.mean <= other.mean + 3.0 * np.hypot(opt.std_error, other.std_error)
        assert opt.mean <= row.var_sorted + 3.0 * opt.std_error


def _observations(rng, sigma, count):
    # pairs at least 0.2 apart so a +-0.05 bin never reaches the diagonal
    scale = math.sqrt(1.0 + sigma ** 2)
    low = rng.uniform(-1.0, 0.5, count) * scale
    gap = 0.2 + rng.uniform(0.0, 1.0, count) * scale
    return np.column_stack([low, low + gap])


def test_optimal_matches_binned_conditional_mean():
    # Arrange
    rng = np.random.default_rng(31)
    exact = RegionIntegrator(kind=IntegratorKind.EXACT_N2)
    half_width, pool, batches = 0.05, 1_000_000, 4

    for sigma in (0.5, 1.0, 1.5, 2.0):
        targets = _observations(rng, sigma, 5)
        sums = np.zeros((5, 2))
        squares = np.zeros((5, 2))
        hits = np.zeros(5)
        for _ in range(batches):
            x, y = _joint_draws(rng, 2, sigma, pool)
            xs, ys = np.sort(x, axis=1), np.sort(y, axis=1)
            for t, target in enumerate(targets):
                near = np.all(np.abs(ys - target) <= half_width, axis=1)
                hits[t] += near.sum()
                sums[t] += xs[near].sum(axis=0)
                squares[t] += (xs[near] ** 2).sum(axis=0)

        for t, target in enumerate(targets):
            # Act
            est = optimal_estimate(GaussianModel(2, sigma), target, exact)

            # Assert
            assert hits[t] >= 200
            binned = sums[t] / hits[t]
            se = np.sqrt((squares[t] / hits[t] - binned ** 2) / hits[t])
            assert np.all(np.abs(est - binned) <= 4.0 * se + 0.01), (sigma, target, est, binned)
