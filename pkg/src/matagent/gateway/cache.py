"""LRU response cache keyed by (endpoint, canonical request body).

Canonicalization sorts object keys and collapses integral floats to ints,
so bodies differing only in key order or ``2`` vs ``2.0`` share an entry.
Stored values are raw response bytes: a hit replays exactly what the first
computation produced.
"""

from __future__ import annotations

import json
import threading
from collections import OrderedDict


def _normalize(value):
    if isinstance(value, float) and value.is_integer():
        return int(value)
    if isinstance(value, dict):
        return {k: _normalize(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_normalize(v) for v in value]
    return value


def canonical_key(endpoint: str, body: dict) -> str:
    return endpoint + "\n" + json.dumps(
        _normalize(body), sort_keys=True, separators=(",", ":"), ensure_ascii=False
    )


class ResponseCache:
    """Thread-safe LRU over raw response payloads."""

    def __init__(self, capacity: int = 1024):
        if capacity < 1:
            raise ValueError("cache capacity must be >= 1")
        self.capacity = capacity
        self._entries: OrderedDict[str, bytes] = OrderedDict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: str) -> bytes | None:
        with self._lock:
            if key not in self._entries:
                self.misses += 1
                return None
            self._entries.move_to_end(key)
            self.hits += 1
            return self._entries[key]

    def put(self, key: str, payload: bytes) -> None:
        with self._lock:
            self._entries[key] = payload
            self._entries.move_to_end(key)
            while len(self._entries) > self.capacity:
                self._entries.popitem(last=False)

    def __len__(self) -> int:
        return len(self._entries)
