from bounds.closed_form import (
    chi_variance,
    max_entropy_mmse_bound,
    max_entropy_var_bound,
    power_sum_table,
    quantile_mean_approx,
    quantile_mean_error_bound,
    quantile_power_sum,
    quantile_power_sum_bound,
    sorted_entropy,
    var_approx,
    var_approx_error_bound,
    var_approx_uniform_form,
)
from bounds.order_stats import (
    DEFAULT_QUAD_POINTS,
    MAX_ORDER_N,
    OrderStatMoments,
    order_stat_moments,
    order_statistic_means,
    var_ratio_curve,
    var_sorted,
)

__all__ = [
    "DEFAULT_QUAD_POINTS",
    "MAX_ORDER_N",
    "OrderStatMoments",
    "order_stat_moments",
    "order_statistic_means",
    "var_ratio_curve",
    "var_sorted",
    "chi_variance",
    "max_entropy_mmse_bound",
    "max_entropy_var_bound",
    "power_sum_table",
    "quantile_mean_approx",
    "quantile_mean_error_bound",
    "quantile_power_sum",
    "quantile_power_sum_bound",
    "sorted_entropy",
    "var_approx",
    "var_approx_error_bound",
    "var_approx_uniform_form",
]
