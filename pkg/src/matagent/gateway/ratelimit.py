"""Token-bucket rate limiting, one bucket per API key.

Refill is continuous: tokens += rate * elapsed, clamped to capacity. A
denied acquire reports how long the caller must wait for enough tokens.
``acquire`` is atomic per bucket, so concurrent requests on one key can
never overdraw it.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field


@dataclass
class TokenBucket:
    capacity: float
    refill_rate: float  # tokens per second
    tokens: float | None = None
    last_refill: float | None = None
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        if self.capacity <= 0 or self.refill_rate <= 0:
            raise ValueError("capacity and refill_rate must be positive")
        if self.tokens is None:
            self.tokens = self.capacity
        self.tokens = min(float(self.tokens), float(self.capacity))

    def acquire(self, n_tokens: float = 1.0, now: float | None = None) -> tuple[bool, float]:
        """Try to take ``n_tokens``; returns (allowed, wait_seconds).

        ``wait_seconds`` is 0 when allowed, else the time until the deficit
        refills.
        """
        if now is None:
            now = time.monotonic()
        with self._lock:
            if self.last_refill is None:
                self.last_refill = now
            elapsed = max(0.0, now - self.last_refill)
            self.tokens = min(self.capacity, self.tokens + self.refill_rate * elapsed)
            self.last_refill = now
            if self.tokens >= n_tokens:
                self.tokens -= n_tokens
                return True, 0.0
            return False, (n_tokens - self.tokens) / self.refill_rate

    def peek(self, now: float | None = None) -> float:
        """Current token level without consuming anything."""
        if now is None:
            now = time.monotonic()
        with self._lock:
            if self.last_refill is None:
                return self.tokens
            return min(self.capacity, self.tokens + self.refill_rate * (now - self.last_refill))
