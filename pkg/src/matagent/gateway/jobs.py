"""Async job store: bounded worker pool, lifecycle states, TTL purge.

States move strictly queued -> running -> done | failed. Completed records
survive for ``ttl`` seconds after their last update, then are purged; a
poll after purge reports UnknownJob with a TTL hint.
"""

from __future__ import annotations

import threading
import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from ..errors import MatagentError

QUEUED = "queued"
RUNNING = "running"
DONE = "done"
FAILED = "failed"
_TERMINAL = (DONE, FAILED)


class UnknownJobError(MatagentError):
    """Job id does not exist (never submitted, or purged after its TTL)."""


@dataclass
class JobRecord:
    job_id: str
    endpoint: str
    body: dict
    state: str
    result: dict | None
    error: str | None
    created: float
    updated: float

    def to_dict(self) -> dict:
        return {
            "job_id": self.job_id,
            "endpoint": self.endpoint,
            "body": self.body,
            "state": self.state,
            "result": self.result,
            "error": self.error,
            "created": self.created,
            "updated": self.updated,
        }


class JobStore:
    def __init__(
        self,
        workers: int = 4,
        ttl: float = 3600.0,
        clock: Callable[[], float] = time.time,
    ):
        self.ttl = ttl
        self.clock = clock
        self._jobs: dict[str, JobRecord] = {}
        self._lock = threading.Lock()
        self._pool = ThreadPoolExecutor(max_workers=max(1, workers))
        self._running = 0
        self.peak_running = 0  # instrumentation for pool-bound checks

    def submit(self, endpoint: str, body: dict, runner: Callable[[str, dict], dict]) -> str:
        job_id = uuid.uuid4().hex
        now = self.clock()
        record = JobRecord(
            job_id=job_id,
            endpoint=endpoint,
            body=body,
            state=QUEUED,
            result=None,
            error=None,
            created=now,
            updated=now,
        )
        with self._lock:
            self._purge_locked(now)
            self._jobs[job_id] = record
        self._pool.submit(self._run, job_id, runner)
        return job_id

    def _run(self, job_id: str, runner: Callable[[str, dict], dict]) -> None:
        with self._lock:
            record = self._jobs.get(job_id)
            if record is None:
                return
            record.state = RUNNING
            record.updated = self.clock()
            self._running += 1
            self.peak_running = max(self.peak_running, self._running)
            endpoint, body = record.endpoint, record.body
        try:
            result = runner(endpoint, body)
            error = None
        except Exception as exc:  # noqa: BLE001 - failures become job state
            result = None
            error = str(exc)
        with self._lock:
            self._running -= 1
            record = self._jobs.get(job_id)
            if record is None:
                return
            record.state = FAILED if error is not None else DONE
            record.result = result
            record.error = error
            record.updated = self.clock()

    def poll(self, job_id: str) -> JobRecord:
        with self._lock:
            self._purge_locked(self.clock())
            record = self._jobs.get(job_id)
            if record is None:
                raise UnknownJobError(
                    f"no job {job_id!r}",
                    hint=f"completed jobs are purged after {self.ttl:.0f}s; resubmit if needed",
                )
            return JobRecord(**record.to_dict())

    def _purge_locked(self, now: float) -> None:
        expired = [
            jid
            for jid, rec in self._jobs.items()
            if rec.state in _TERMINAL and now - rec.updated > self.ttl
        ]
        for jid in expired:
            del self._jobs[jid]

    def wait_all(self, timeout: float = 30.0) -> None:
        """Block until no job is queued or running (test convenience)."""
        deadline = time.monotonic() + timeout
        while time.monotonic() < deadline:
            with self._lock:
                busy = any(rec.state in (QUEUED, RUNNING) for rec in self._jobs.values())
            if not busy:
                return
            time.sleep(0.005)
        raise TimeoutError("jobs still pending after wait_all timeout")

    def snapshot(self) -> list[dict]:
        with self._lock:
            return [rec.to_dict() for rec in self._jobs.values() if rec.state in _TERMINAL]

    def load_snapshot(self, entries: list[dict]) -> None:
        with self._lock:
            for e in entries:
                self._jobs[e["job_id"]] = JobRecord(**e)

    def shutdown(self) -> None:
        self._pool.shutdown(wait=False, cancel_futures=True)
