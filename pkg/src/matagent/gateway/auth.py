"""API-key records and bearer-token authentication.

Secrets are hashed (SHA-256) at load time and never stored or logged in
plaintext; lookups hash the presented token. The contract is plain bearer
tokens, header-compatible with JWT should the deployment grow one later.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from ..errors import MatagentError
from .ratelimit import TokenBucket


class AuthError(MatagentError):
    """Missing, malformed, unknown, or disabled credential."""


def hash_secret(secret: str) -> str:
    return hashlib.sha256(secret.encode("utf-8")).hexdigest()


@dataclass
class ApiKeyRecord:
    key_id: str
    secret_hash: str
    bucket: TokenBucket
    enabled: bool = True

    def __repr__(self) -> str:  # never leak hash material in logs
        return f"ApiKeyRecord(key_id={self.key_id!r}, enabled={self.enabled})"


@dataclass
class KeyStore:
    _by_hash: dict[str, ApiKeyRecord] = field(default_factory=dict)

    def add(
        self,
        key_id: str,
        secret: str | None = None,
        secret_hash: str | None = None,
        capacity: float = 20.0,
        refill_rate: float = 5.0,
        enabled: bool = True,
        tokens: float | None = None,
    ) -> ApiKeyRecord:
        if secret_hash is None:
            if secret is None:
                raise ValueError("need secret or secret_hash")
            secret_hash = hash_secret(secret)
        record = ApiKeyRecord(
            key_id=key_id,
            secret_hash=secret_hash,
            bucket=TokenBucket(capacity=capacity, refill_rate=refill_rate, tokens=tokens),
            enabled=enabled,
        )
        self._by_hash[secret_hash] = record
        return record

    def authenticate(self, authorization: str | None) -> ApiKeyRecord:
        """Resolve an Authorization header value; raises AuthError otherwise."""
        if not authorization:
            raise AuthError("missing API key", hint="send 'Authorization: Bearer <key>'")
        scheme, _, token = authorization.partition(" ")
        if scheme.lower() != "bearer" or not token.strip():
            raise AuthError(
                "malformed Authorization header", hint="send 'Authorization: Bearer <key>'"
            )
        record = self._by_hash.get(hash_secret(token.strip()))
        if record is None or not record.enabled:
            raise AuthError("unknown or disabled API key", hint="request a valid key")
        return record

    def records(self) -> list[ApiKeyRecord]:
        return list(self._by_hash.values())

    def snapshot(self) -> list[dict]:
        return [
            {
                "key_id": r.key_id,
                "secret_hash": r.secret_hash,
                "capacity": r.bucket.capacity,
                "refill_rate": r.bucket.refill_rate,
                "tokens": r.bucket.peek(),
                "enabled": r.enabled,
            }
            for r in self._by_hash.values()
        ]

    @classmethod
    def from_snapshot(cls, entries: list[dict]) -> "KeyStore":
        store = cls()
        for e in entries:
            store.add(
                key_id=e["key_id"],
                secret_hash=e["secret_hash"],
                capacity=e.get("capacity", 20.0),
                refill_rate=e.get("refill_rate", 5.0),
                enabled=e.get("enabled", True),
                tokens=e.get("tokens"),
            )
        return store
