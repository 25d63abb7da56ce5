"""Concurrent-load simulation with latency statistics.

Virtual users start staggered over the ramp window and issue sequential
requests against a target. Stub targets inject a deterministic latency by
global sample index, so their statistics are exactly checkable; HTTP
targets measure wall-clock latency and merely characterize the local
deployment.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass

import numpy as np
import requests

from .stats import InvalidRunsError, percentile_nearest_rank


class StubTarget:
    """Deterministic latency injection: sample i gets latencies[i mod n].

    ``request`` sleeps the injected latency (scaled), then reports the
    injected value exactly, keeping the statistics noise-free.
    """

    def __init__(self, latencies, sleep_scale: float = 1.0):
        self.latencies = [float(x) for x in latencies]
        if not self.latencies:
            raise InvalidRunsError("stub target needs at least one latency")
        self.sleep_scale = sleep_scale

    @classmethod
    def constant(cls, latency: float, **kwargs) -> "StubTarget":
        return cls([latency], **kwargs)

    @classmethod
    def uniform(cls, lo: float, hi: float, n: int = 1000, seed: int = 0, **kwargs) -> "StubTarget":
        rng = np.random.default_rng(seed)
        return cls(rng.uniform(lo, hi, size=n).tolist(), **kwargs)

    def request(self, sample_index: int) -> float:
        latency = self.latencies[sample_index % len(self.latencies)]
        if self.sleep_scale > 0:
            time.sleep(latency * self.sleep_scale)
        return latency


class HttpTarget:
    """Measures end-to-end wall latency of GET requests against a URL."""

    def __init__(self, url: str, api_key: str | None = None, timeout: float = 60.0):
        self.url = url
        self.headers = {"Authorization": f"Bearer {api_key}"} if api_key else {}
        self.timeout = timeout

    def request(self, sample_index: int) -> float:
        started = time.perf_counter()
        requests.get(self.url, headers=self.headers, timeout=self.timeout)
        return time.perf_counter() - started


@dataclass(frozen=True)
class LoadReport:
    n_users: int
    latencies: tuple[float, ...]
    mean: float
    p50: float
    p95: float
    max: float

    @classmethod
    def from_samples(cls, n_users: int, latencies: list[float]) -> "LoadReport":
        if not latencies:
            raise InvalidRunsError("no latency samples collected")
        return cls(
            n_users=n_users,
            latencies=tuple(latencies),
            mean=float(np.mean(latencies)),
            p50=percentile_nearest_rank(latencies, 50),
            p95=percentile_nearest_rank(latencies, 95),
            max=float(np.max(latencies)),
        )

    def to_dict(self) -> dict:
        return {
            "n_users": self.n_users,
            "samples": len(self.latencies),
            "mean": self.mean,
            "p50": self.p50,
            "p95": self.p95,
            "max": self.max,
        }


def load_sim(target, n_users: int, ramp: float, requests_per_user: int) -> LoadReport:
    """Run the staggered-user simulation and aggregate latency statistics."""
    if n_users < 1:
        raise InvalidRunsError(f"n_users must be >= 1, got {n_users}")
    if requests_per_user < 1:
        raise InvalidRunsError(f"requests_per_user must be >= 1, got {requests_per_user}")
    if ramp < 0:
        raise InvalidRunsError(f"ramp must be >= 0, got {ramp}")

    samples: list[float | None] = [None] * (n_users * requests_per_user)
    errors: list[str] = []
    lock = threading.Lock()

    def user(uid: int) -> None:
        time.sleep(ramp * uid / n_users)
        for j in range(requests_per_user):
            idx = uid * requests_per_user + j
            try:
                latency = target.request(idx)
            except Exception as exc:  # noqa: BLE001 - collected, not raised mid-run
                with lock:
                    errors.append(f"user {uid} request {j}: {exc}")
                continue
            samples[idx] = latency  # slot write, no lock needed

    threads = [threading.Thread(target=user, args=(uid,)) for uid in range(n_users)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()

    collected = [s for s in samples if s is not None]
    if errors and not collected:
        raise InvalidRunsError(f"all requests failed; first error: {errors[0]}")
    return LoadReport.from_samples(n_users, collected)
