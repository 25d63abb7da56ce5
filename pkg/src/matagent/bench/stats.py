"""Statistics for the benchmark harness: percentiles and parity metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import MatagentError


class LengthMismatchError(MatagentError):
    """Predicted and reference arrays must have equal length."""


class InvalidRunsError(MatagentError):
    """Run/user/request counts must be positive."""


def percentile_nearest_rank(samples, q: float) -> float:
    """Nearest-rank percentile: the ceil(q/100 * n)-th smallest sample."""
    if not 0 < q <= 100:
        raise ValueError(f"percentile q must lie in (0, 100], got {q}")
    ordered = sorted(samples)
    if not ordered:
        raise InvalidRunsError("cannot take a percentile of an empty sample")
    rank = max(1, math.ceil(q / 100.0 * len(ordered)))
    return float(ordered[rank - 1])


@dataclass(frozen=True)
class ParityStats:
    n: int
    mae: float
    r_squared: float | None  # absent when the reference is degenerate or n < 2

    def to_dict(self) -> dict:
        return {"n": self.n, "mae": self.mae, "r_squared": self.r_squared}


def parity_stats(predicted, reference) -> ParityStats:
    """MAE and coefficient of determination of predictions vs reference.

    R^2 = 1 - sum((p - r)^2) / sum((r - mean(r))^2); a zero-variance
    reference makes it undefined, reported as None. MAE is symmetric under
    swapping the arguments; R^2 is not.
    """
    p = np.asarray(predicted, dtype=np.float64)
    r = np.asarray(reference, dtype=np.float64)
    if p.shape != r.shape or p.ndim != 1:
        raise LengthMismatchError(
            f"predicted and reference must be 1-d and equal-length, got {p.shape} vs {r.shape}"
        )
    if p.size == 0:
        raise LengthMismatchError("need at least one sample")
    mae = float(np.mean(np.abs(p - r)))
    r_squared: float | None = None
    if p.size >= 2:
        ss_res = float(np.sum((p - r) ** 2))
        ss_tot = float(np.sum((r - r.mean()) ** 2))
        if ss_tot > 0.0:
            r_squared = 1.0 - ss_res / ss_tot
    return ParityStats(n=int(p.size), mae=mae, r_squared=r_squared)
