"""REST gateway: routes, auth, rate limiting, cache, async jobs."""

from .app import Gateway, GatewayHTTPError, build_route_specs, create_app
from .auth import ApiKeyRecord, AuthError, KeyStore, hash_secret
from .cache import ResponseCache, canonical_key
from .config import ENV_PREFIX, GatewayConfig
from .jobs import JobRecord, JobStore, UnknownJobError
from .ratelimit import TokenBucket

__all__ = [
    "ENV_PREFIX",
    "ApiKeyRecord",
    "AuthError",
    "Gateway",
    "GatewayConfig",
    "GatewayHTTPError",
    "JobRecord",
    "JobStore",
    "KeyStore",
    "ResponseCache",
    "TokenBucket",
    "UnknownJobError",
    "build_route_specs",
    "canonical_key",
    "create_app",
    "hash_secret",
]
