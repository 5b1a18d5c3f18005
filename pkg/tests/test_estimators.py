import itertools

import numpy as np
import pytest

from bounds import order_statistic_means
from estimators import (
    EstimatorContext,
    EstimatorKind,
    FixedPointOptions,
    Registry,
    describe,
    fhat_estimate,
    get_estimator,
    hhat_estimate,
    identity_estimate,
    mixture_log_likelihood,
    mle_estimate,
    mle_fixed_point_map,
    optimal_estimate,
)
from model import GaussianModel, IntegratorKind, RegionIntegrator
from prob_core.errors import ArgumentError, ConfigurationError, DomainError
from prob_core.streams import substream

EXACT = RegionIntegrator(kind=IntegratorKind.EXACT_N2)


def test_registry_lists_every_estimator():
    assert {"optimal", "fhat", "hhat", "mle", "identity"} <= set(Registry)
    assert describe("hhat").startswith("High-noise")


def test_unknown_estimator_lists_available():
    with pytest.raises(ConfigurationError) as exc:
        get_estimator("median")
    assert "Available estimators" in str(exc.value)
    with pytest.raises(ConfigurationError):
        EstimatorKind("median")


def test_optimal_at_tied_observation():
    est = optimal_estimate(GaussianModel(2, 1.0), [0.0, 0.0], EXACT)
    assert est == pytest.approx([-0.398942, 0.398942], abs=1e-6)


def test_optimal_scalar_is_posterior_mean():
    est = optimal_estimate(GaussianModel(1, 1.0), [2.0], RegionIntegrator())
    assert est == pytest.approx([1.0])


@pytest.mark.parametrize("y", [[-1.0, 0.5, 2.0], [1.0, 1.0, 3.0]])
def test_noiseless_estimators_return_observation(y):
    model = GaussianModel(3, 0.0)
    integ = RegionIntegrator()
    assert optimal_estimate(model, y, integ) == pytest.approx(y)
    assert fhat_estimate(model, y, integ) == pytest.approx(y)
    assert mle_estimate(model, y) == pytest.approx(y)


def test_estimators_reject_unsorted_input():
    model = GaussianModel(2, 1.0)
    with pytest.raises(ArgumentError):
        optimal_estimate(model, [1.0, 0.0], EXACT)
    with pytest.raises(ArgumentError):
        fhat_estimate(model, [1.0, 0.0], EXACT)
    with pytest.raises(ArgumentError):
        identity_estimate([1.0, 0.0])


def test_optimal_is_nondecreasing_on_monte_carlo_batch():
    # Arrange
    model = GaussianModel(3, 1.5)
    ys = np.sort(substream(5, 0).standard_normal((20, 3)) * 2.0, axis=1)
    ctx = EstimatorContext(integrator=RegionIntegrator(mc_samples=256, substream_seed=2))

    # Act
    est = get_estimator("optimal")(model, ys, ctx)

    # Assert
    assert est.shape == ys.shape
    assert np.all(np.diff(est, axis=1) >= 0.0)


def test_optimal_and_fhat_share_region_cache():
    model = GaussianModel(3, 1.0)
    ys = np.array([[-0.3, 0.0, 0.4]])
    ctx = EstimatorContext(integrator=RegionIntegrator(mc_samples=128))
    get_estimator("optimal")(model, ys, ctx)
    get_estimator("fhat")(model, ys, ctx)
    assert len(ctx._region_cache) == 1


def test_region_estimator_without_integrator_fails():
    with pytest.raises(ConfigurationError):
        get_estimator("fhat")(GaussianModel(2, 1.0), np.array([[0.0, 1.0]]), EstimatorContext())


def test_fhat_matches_direct_formula_n2():
    # Arrange
    model = GaussianModel(2, 1.0)
    y = np.array([-1.0, 1.0])
    probs = EXACT.functionals(model, y[None, :]).probs[0]

    # Act
    est = fhat_estimate(model, y, EXACT)

    # Assert
    expected = (probs[0] * y + probs[1] * y[::-1]) * model.shrinkage
    assert est == pytest.approx(expected)


def test_hhat_and_identity():
    model = GaussianModel(3, 2.0)
    osm = order_statistic_means(3)
    assert np.array_equal(hhat_estimate(model, osm), osm)
    with pytest.raises(ArgumentError):
        hhat_estimate(model, osm[:2])
    ys = np.array([[0.0, 1.0, 2.0], [-1.0, -1.0, 5.0]])
    assert np.array_equal(get_estimator("hhat")(model, ys, EstimatorContext()), np.vstack([osm, osm]))
    assert np.array_equal(get_estimator("identity")(model, ys, EstimatorContext()), ys)
    assert identity_estimate([0.0, 1.0]) == pytest.approx([0.0, 1.0])


def test_mle_small_noise_returns_observation():
    est = mle_estimate(GaussianModel(3, 1e-3), [-0.7, 0.1, 1.2])
    assert est == pytest.approx([-0.7, 0.1, 1.2], abs=1e-6)


def test_mle_is_fixed_point_with_better_likelihood():
    # Arrange
    model = GaussianModel(2, 1.0)
    y = [0.0, 2.0]

    # Act
    t = mle_estimate(model, y)

    # Assert
    assert np.max(np.abs(mle_fixed_point_map(model, y, t) - t)) <= 1e-6
    assert t[0] <= t[1]
    assert mixture_log_likelihood(model, y, t) >= mixture_log_likelihood(model, y, y) - 1e-12


def test_mle_on_tied_observation():
    est = mle_estimate(GaussianModel(2, 0.5), [0.0, 0.0])
    assert est == pytest.approx([0.0, 0.0])


def test_mixture_log_likelihood_scalar_is_gaussian_log_density():
    assert mixture_log_likelihood(GaussianModel(1, 1.0), [0.0], [0.0]) == pytest.approx(-0.918938533, abs=1e-9)
    with pytest.raises(DomainError):
        mixture_log_likelihood(GaussianModel(1, 0.0), [0.0], [0.0])


def test_fixed_point_options_validation():
    with pytest.raises(ConfigurationError):
        FixedPointOptions(restarts=4)
    with pytest.raises(ConfigurationError):
        FixedPointOptions(tolerance=0.0)
    with pytest.raises(ConfigurationError):
        FixedPointOptions(damping=1.5)


@pytest.mark.parametrize("a", [0.3, 1.0, 2.5])
def test_mle_is_antisymmetric_for_symmetric_observation(a):
    est = mle_estimate(GaussianModel(2, 1.0), [-a, a])
    assert est[0] == pytest.approx(-est[1], abs=1e-7)
    assert est[0] <= est[1]


def test_mle_map_does_not_depend_on_enumeration_order():
    # Arrange
    model = GaussianModel(3, 0.8)
    y = np.array([-0.6, 0.2, 1.1])
    t = np.array([-0.3, 0.0, 0.7])
    perms = list(itertools.permutations(range(3)))
    order = substream(17, 0).permutation(len(perms))

    # Act
    stack = np.array([y[list(perms[k])] for k in order])
    logits = stack @ t / model.sigma ** 2
    w = np.exp(logits - logits.max())
    shuffled = (w / w.sum()) @ stack

    # Assert
    assert mle_fixed_point_map(model, y, t) == pytest.approx(shuffled, abs=1e-12)


def test_mle_small_noise_returns_random_observations():
    rng = substream(23, 0)
    model = GaussianModel(4, 1e-3)
    for _ in range(10):
        # consecutive entries at least 0.1 apart
        y = rng.standard_normal() + np.cumsum(0.1 + rng.uniform(size=4))
        assert mle_estimate(model, y) == pytest.approx(y, abs=1e-4)
