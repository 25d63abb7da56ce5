"""Tokens-per-second measurement and speedup tables.

The generation clock opens when the response stream opens (first frame
received, queueing and prompt processing excluded) and closes on the last
token delta; TPS is completion tokens over that window. Absolute numbers
are hardware-bound and not comparable across machines.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..agent.messages import ChatMessage, LlmParams
from .stats import InvalidRunsError

DEFAULT_PROMPT = (
    "Explain, in several technical paragraphs, how powder X-ray diffraction "
    "identifies crystalline phases, covering Bragg's law, structure factors, "
    "and systematic absences."
)


@dataclass(frozen=True)
class TpsRun:
    completion_tokens: int
    elapsed: float

    @property
    def tps(self) -> float:
        return self.completion_tokens / self.elapsed

    def to_dict(self) -> dict:
        return {
            "completion_tokens": self.completion_tokens,
            "elapsed": self.elapsed,
            "tps": self.tps,
        }


@dataclass(frozen=True)
class TpsResult:
    model: str
    runs: tuple[TpsRun, ...]
    mean_tps: float
    std_tps: float

    @classmethod
    def from_runs(cls, model: str, runs: list[TpsRun]) -> "TpsResult":
        if not runs:
            raise InvalidRunsError("need at least one run")
        values = np.array([r.tps for r in runs])
        return cls(
            model=model,
            runs=tuple(runs),
            mean_tps=float(values.mean()),
            std_tps=float(values.std()),  # population std over the runs
        )

    @classmethod
    def from_mean(cls, model: str, mean_tps: float) -> "TpsResult":
        """Wrap an externally reported mean (no per-run data)."""
        return cls(
            model=model,
            runs=(TpsRun(completion_tokens=0, elapsed=1.0),),
            mean_tps=float(mean_tps),
            std_tps=0.0,
        )

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "runs": [r.to_dict() for r in self.runs],
            "mean_tps": self.mean_tps,
            "std_tps": self.std_tps,
        }


def measure_tps(backend, params: LlmParams, prompt: str = DEFAULT_PROMPT, n_runs: int = 3) -> TpsResult:
    """Issue ``n_runs`` streamed completions and time the token deltas."""
    if n_runs < 1:
        raise InvalidRunsError(f"n_runs must be >= 1, got {n_runs}")
    messages = [ChatMessage("user", prompt)]
    runs: list[TpsRun] = []
    for _ in range(n_runs):
        stream = backend.stream(messages, params).drain()
        elapsed = max(stream.duration, 1e-9)
        runs.append(TpsRun(completion_tokens=stream.completion_tokens, elapsed=elapsed))
    return TpsResult.from_runs(params.model, runs)


def speedup_table(baseline: TpsResult, others: list[TpsResult]) -> list[dict]:
    """Per-model mean TPS and speedup over the baseline, speedup to 2 decimals."""
    rows = [{"model": baseline.model, "mean_tps": baseline.mean_tps, "speedup": 1.00}]
    for result in others:
        rows.append(
            {
                "model": result.model,
                "mean_tps": result.mean_tps,
                "speedup": round(result.mean_tps / baseline.mean_tps, 2),
            }
        )
    return rows
