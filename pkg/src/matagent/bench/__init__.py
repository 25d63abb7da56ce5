"""Benchmark harness: throughput, concurrent load, and parity statistics."""

from .load import HttpTarget, LoadReport, StubTarget, load_sim
from .stats import (
    InvalidRunsError,
    LengthMismatchError,
    ParityStats,
    parity_stats,
    percentile_nearest_rank,
)
from .tps import DEFAULT_PROMPT, TpsResult, TpsRun, measure_tps, speedup_table

__all__ = [
    "DEFAULT_PROMPT",
    "HttpTarget",
    "InvalidRunsError",
    "LengthMismatchError",
    "LoadReport",
    "ParityStats",
    "StubTarget",
    "TpsResult",
    "TpsRun",
    "load_sim",
    "measure_tps",
    "parity_stats",
    "percentile_nearest_rank",
    "speedup_table",
]
