"""Monte Carlo summaries and sweep tables."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from prob_core.errors import NumericalError


@dataclass(frozen=True)
class MonteCarloResult:
    mean: float
    std_error: float
    samples: int

    @classmethod
    def empty(cls) -> "MonteCarloResult":
        return cls(0.0, 0.0, 0)

    @classmethod
    def from_samples(cls, values: Sequence[float]) -> "MonteCarloResult":
        arr = np.asarray(values, dtype=float).ravel()
        if arr.size == 0:
            return cls.empty()
        if not np.all(np.isfinite(arr)):
            raise NumericalError(f"{int(np.sum(~np.isfinite(arr)))} non-finite Monte Carlo samples")
        se = float(np.std(arr, ddof=1) / math.sqrt(arr.size)) if arr.size > 1 else 0.0
        return cls(float(np.mean(arr)), se, int(arr.size))

    @property
    def variance(self) -> float:
        """Sample variance (ddof=1) recovered from the standard error."""
        return self.std_error ** 2 * self.samples

    def within(self, expected: float, n_se: float = 3.0, floor: float = 0.0) -> bool:
        return abs(self.mean - expected) <= n_se * self.std_error + floor

    def to_dict(self) -> Dict[str, Any]:
        return {"mean": self.mean, "std_error": self.std_error, "samples": self.samples}


def merge_results(a: MonteCarloResult, b: MonteCarloResult) -> MonteCarloResult:
    """Pool two estimates of the same quantity (Chan et al. parallel variance)."""
    if a.samples == 0:
        return b
    if b.samples == 0:
        return a
    na, nb = a.samples, b.samples
    total = na + nb
    mean = (na * a.mean + nb * b.mean) / total
    delta = b.mean - a.mean
    m2 = a.variance * (na - 1) + b.variance * (nb - 1) + delta * delta * na * nb / total
    var = m2 / (total - 1)
    return MonteCarloResult(mean, math.sqrt(var / total), total)


def pooled_se(*results: MonteCarloResult) -> float:
    """Standard error of a sum or difference of independent estimates."""
    return math.sqrt(sum(r.std_error ** 2 for r in results))


@dataclass
class SweepRow:
    sigma: float
    results: Dict[str, MonteCarloResult]
    var_sorted: float
    mmse_unsorted: float
    lower_bound: float

    def get(self, tag: str) -> Optional[MonteCarloResult]:
        return self.results.get(tag)


@dataclass
class SweepTable:
    n: int
    estimators: List[str]
    rows: List[SweepRow] = field(default_factory=list)

    def to_records(self) -> List[Dict[str, Any]]:
        records = []
        for row in self.rows:
            rec: Dict[str, Any] = {"sigma": row.sigma}
            for tag in self.estimators:
                res = row.get(tag)
                rec[f"mse_{tag}"] = res.mean if res else None
                rec[f"se_{tag}"] = res.std_error if res else None
            rec["var_sorted"] = row.var_sorted
            rec["mmse_unsorted"] = row.mmse_unsorted
            rec["mmse_lower_bound"] = row.lower_bound
            records.append(rec)
        return records


__all__ = ["MonteCarloResult", "merge_results", "pooled_se", "SweepRow", "SweepTable"]
