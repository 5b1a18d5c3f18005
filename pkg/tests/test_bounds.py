import math

import numpy as np
import pytest

from bounds import (
    chi_variance,
    max_entropy_mmse_bound,
    max_entropy_var_bound,
    order_stat_moments,
    order_statistic_means,
    power_sum_table,
    quantile_mean_approx,
    quantile_mean_error_bound,
    quantile_power_sum,
    quantile_power_sum_bound,
    sorted_entropy,
    var_approx,
    var_approx_error_bound,
    var_approx_uniform_form,
    var_ratio_curve,
    var_sorted,
)
from prob_core.errors import DomainError


def test_order_statistic_means_small_n():
    assert order_statistic_means(1) == pytest.approx([0.0], abs=1e-12)
    assert order_statistic_means(2) == pytest.approx([-0.5641896, 0.5641896], abs=1e-6)
    assert order_statistic_means(3) == pytest.approx([-0.8462844, 0.0, 0.8462844], abs=1e-6)


def test_order_statistic_means_antisymmetric_and_increasing():
    m = order_statistic_means(25)
    assert np.allclose(m, -m[::-1])
    assert np.all(np.diff(m) > 0)


def test_var_sorted_values():
    assert var_sorted(1) == pytest.approx(1.0, abs=1e-10)
    assert var_sorted(2) == pytest.approx(1.36338, abs=1e-5)
    assert var_sorted(3) == pytest.approx(1.5676, abs=1e-3)
    assert var_sorted(4) == pytest.approx(1.704, abs=1e-3)
    mom = order_stat_moments(4)
    assert mom.var_sorted == pytest.approx(var_sorted(4))


def test_var_ratio_curve():
    rows = var_ratio_curve(30)
    assert [r[0] for r in rows] == list(range(1, 31))
    ratios = {n: ratio for n, _, ratio in rows}
    assert ratios[1] == pytest.approx(1.0, abs=1e-2)
    assert ratios[10] == pytest.approx(0.2086, abs=5e-3)
    assert ratios[30] == pytest.approx(0.0815, abs=5e-3)
    assert all(ratios[n + 1] < ratios[n] for n in range(1, 30))


def test_order_statistics_domain():
    with pytest.raises(DomainError):
        order_statistic_means(0)
    with pytest.raises(DomainError):
        order_statistic_means(1001)


def test_large_n_stays_finite():
    assert math.isfinite(var_sorted(1000))
    assert 0.0 < var_sorted(1000) < 1000


def test_quantile_mean_approx_and_bound():
    assert quantile_mean_approx(3, 3) == pytest.approx(0.674490, abs=1e-6)
    assert quantile_mean_approx(2, 3) == pytest.approx(0.0, abs=1e-12)
    assert quantile_mean_error_bound(1, 1) == pytest.approx(2.5840, abs=1e-3)
    with pytest.raises(DomainError):
        quantile_mean_approx(0, 3)
    with pytest.raises(DomainError):
        quantile_mean_error_bound(4, 3)


def test_quantile_error_bound_holds_against_quadrature():
    for n in range(1, 51):
        means = order_statistic_means(n)
        for i in range(1, n + 1):
            gap = abs(means[i - 1] - quantile_mean_approx(i, n))
            assert gap <= quantile_mean_error_bound(i, n)


def test_var_approx():
    assert var_approx(2) == pytest.approx(1.628948, abs=1e-5)
    for n in (1, 5, 40):
        assert var_approx_uniform_form(n) == pytest.approx(var_approx(n))


def test_var_approx_error_bound():
    assert var_approx_error_bound(2) == pytest.approx(67.80, abs=0.01)
    with pytest.raises(DomainError):
        var_approx_error_bound(1)


def test_chi_variance():
    assert chi_variance(1) == pytest.approx(1.0 - 2.0 / math.pi, abs=1e-9)
    assert chi_variance(2) == pytest.approx(0.429204, abs=1e-6)
    assert chi_variance(1000) == pytest.approx(0.49987, abs=1e-4)
    values = [chi_variance(n) for n in range(1, 200)]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert max(values) <= 0.5


def test_max_entropy_bounds():
    assert max_entropy_var_bound(2) == pytest.approx(1.0)
    assert max_entropy_var_bound(3) == pytest.approx(0.908560, abs=1e-6)
    assert max_entropy_mmse_bound(2, 1.0) == pytest.approx(0.5)
    assert max_entropy_mmse_bound(4, float("inf")) == pytest.approx(max_entropy_var_bound(4))
    assert max_entropy_mmse_bound(3, 0.0) == 0.0
    with pytest.raises(DomainError):
        max_entropy_mmse_bound(3, -1.0)


def test_sorted_entropy():
    assert sorted_entropy(1) == pytest.approx(1.418939, abs=1e-6)
    assert sorted_entropy(2) == pytest.approx(2.144729, abs=1e-6)


def test_quantile_power_sums():
    assert quantile_power_sum(7, 0.0) == pytest.approx(7.0)
    assert quantile_power_sum(3, 1.0) == pytest.approx(0.9099, abs=1e-3)
    assert quantile_power_sum_bound(3, 1.0) == pytest.approx(36.32, abs=0.01)
    # eps = 4 takes the logarithmic branch
    lhs, bound = power_sum_table(9, [4.0])[4.0]
    assert math.isfinite(bound) and bound >= lhs
    with pytest.raises(DomainError):
        quantile_power_sum(3, -1.0)


def _var_sorted_table(n_max):
    return {n: v for n, v, _ in var_ratio_curve(n_max)}


def test_var_sorted_dominates_chi_variance_up_to_200():
    table = _var_sorted_table(200)
    violations = [n for n, v in table.items() if v < chi_variance(n)]
    assert violations == []


def test_var_approx_within_error_bound_up_to_200():
    table = _var_sorted_table(200)
    violations = [n for n in range(2, 201) if abs(table[n] - var_approx(n)) > var_approx_error_bound(n)]
    assert violations == []


def test_max_entropy_var_bound_below_var_sorted_up_to_100():
    table = _var_sorted_table(100)
    violations = [n for n, v in table.items() if max_entropy_var_bound(n) > v + 1e-9]
    assert violations == []


@pytest.mark.parametrize("eps", [0.0, 0.5, 1.0, 2.0, 4.0])
def test_quantile_power_sum_bound_up_to_200(eps):
    violations = [n for n in range(1, 201) if quantile_power_sum(n, eps) > quantile_power_sum_bound(n, eps)]
    assert violations == []


def test_var_ratio_strictly_decreasing_up_to_200():
    ratios = [ratio for _, _, ratio in var_ratio_curve(200)]
    # ratios[0] is n = 1
    assert all(b < a for a, b in zip(ratios[1:], ratios[2:]))
    assert ratios[-1] < 0.05
