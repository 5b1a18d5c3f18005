from prob_core.errors import (
    ArgumentError,
    ConfigurationError,
    DomainError,
    NumericalError,
    OrdstatError,
)
from prob_core.permutations import (
    MAX_PERMUTATION_N,
    Permutation,
    SortedVector,
    apply_permutation,
    is_in_sorted_region,
    lexicographic_rank,
    permutation_array,
    permutations,
    require_sorted_rows,
    sort_ascending,
)
from prob_core.special import std_normal_cdf, std_normal_pdf, std_normal_quantile
from prob_core.streams import substream

__all__ = [
    "OrdstatError",
    "ConfigurationError",
    "DomainError",
    "ArgumentError",
    "NumericalError",
    "MAX_PERMUTATION_N",
    "Permutation",
    "SortedVector",
    "apply_permutation",
    "is_in_sorted_region",
    "lexicographic_rank",
    "permutation_array",
    "permutations",
    "require_sorted_rows",
    "sort_ascending",
    "std_normal_pdf",
    "std_normal_cdf",
    "std_normal_quantile",
    "substream",
]
