"""Permutations of coordinates and the sorted region.

Enumeration order is lexicographic (itertools order), so permutation-indexed
sums come out the same on every run. ``lexicographic_rank`` is the inverse of
that enumeration and lets Monte Carlo code map a sorting order straight to
its permutation index.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence, Tuple, Union

import numpy as np

from prob_core.errors import ArgumentError, ConfigurationError

MAX_PERMUTATION_N = 8

VectorLike = Union[Sequence[float], np.ndarray]


@dataclass(frozen=True)
class Permutation:
    """Bijection on {0, ..., n-1}; ``apply`` computes ``out[i] = v[mapping[i]]``."""

    mapping: Tuple[int, ...]

    def __post_init__(self) -> None:
        m = tuple(int(i) for i in self.mapping)
        if sorted(m) != list(range(len(m))):
            raise ArgumentError(f"mapping is not a bijection on 0..{len(m) - 1}: {m}")
        object.__setattr__(self, "mapping", m)

    @property
    def n(self) -> int:
        return len(self.mapping)

    @property
    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))

    def apply(self, v: VectorLike) -> np.ndarray:
        return apply_permutation(self, v)


@dataclass(frozen=True)
class SortedVector:
    """Real vector certified nondecreasing (ties allowed)."""

    values: Tuple[float, ...]

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.values)
        if not is_in_sorted_region(vals):
            raise ArgumentError(f"values are not nondecreasing: {vals}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, v: Union["SortedVector", VectorLike]) -> "SortedVector":
        """Certify an already sorted vector; unsorted input raises ArgumentError."""
        if isinstance(v, SortedVector):
            return v
        return cls(tuple(np.asarray(v, dtype=float).ravel()))

    def __len__(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


def _check_guard(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or not 1 <= int(n) <= MAX_PERMUTATION_N:
        raise ConfigurationError(f"permutation enumeration supports 1 <= n <= {MAX_PERMUTATION_N}, got {n}")
    return int(n)


def permutations(n: int) -> Iterator[Permutation]:
    """All n! permutations in lexicographic order; the identity comes first."""
    n = _check_guard(n)
    for p in itertools.permutations(range(n)):
        yield Permutation(p)


@lru_cache(maxsize=None)
def _permutation_table(n: int) -> np.ndarray:
    table = np.array(list(itertools.permutations(range(n))), dtype=np.intp).reshape(math.factorial(n), n)
    table.setflags(write=False)
    return table


def permutation_array(n: int) -> np.ndarray:
    """Read-only ``(n!, n)`` index table; row k is the k-th permutation's mapping."""
    return _permutation_table(_check_guard(n))


def lexicographic_rank(orders: np.ndarray) -> np.ndarray:
    """Index of each row of ``orders`` in the lexicographic enumeration (Lehmer code)."""
    o = np.atleast_2d(np.asarray(orders))
    n = o.shape[1]
    rank = np.zeros(o.shape[0], dtype=np.intp)
    for i in range(n - 1):
        smaller = np.count_nonzero(o[:, i + 1:] < o[:, i:i + 1], axis=1)
        rank += smaller * math.factorial(n - 1 - i)
    return rank


def apply_permutation(perm: Permutation, v: VectorLike) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1 or arr.shape[0] != perm.n:
        raise ArgumentError(f"length mismatch: permutation of {perm.n}, vector of shape {arr.shape}")
    return arr[list(perm.mapping)]


def sort_ascending(v: VectorLike) -> SortedVector:
    arr = np.asarray(v, dtype=float).ravel()
    if not np.all(np.isfinite(arr)):
        raise ArgumentError("cannot sort a vector with non-finite entries")
    return SortedVector(tuple(arr[np.argsort(arr, kind="stable")]))


def is_in_sorted_region(v: VectorLike) -> bool:
    arr = np.asarray(v, dtype=float).ravel()
    return bool(np.all(arr[1:] >= arr[:-1]))


def require_sorted_rows(ys: np.ndarray, n: int) -> np.ndarray:
    """Validate a batch of sorted observations, one per row."""
    arr = np.asarray(ys, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != n:
        raise ArgumentError(f"expected rows of length {n}, got shape {arr.shape}")
    if not np.all(arr[:, 1:] >= arr[:, :-1]):
        raise ArgumentError("estimators are defined on sorted observations; got an unsorted row")
    return arr


__all__ = [
    "MAX_PERMUTATION_N",
    "Permutation",
    "SortedVector",
    "permutations",
    "permutation_array",
    "lexicographic_rank",
    "apply_permutation",
    "sort_ascending",
    "is_in_sorted_region",
    "require_sorted_rows",
]
