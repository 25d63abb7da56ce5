"""Gateway configuration: JSON file plus MATAGENT_* environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

ENV_PREFIX = "MATAGENT_"


@dataclass
class GatewayConfig:
    host: str = "127.0.0.1"
    port: int = 8042
    bucket_capacity: float = 20.0
    bucket_refill_rate: float = 5.0
    cache_size: int = 1024
    workers: int = 4
    job_ttl: float = 3600.0
    llm_backend_url: str | None = None  # None -> scripted backend from fixtures
    llm_model: str = "scripted-demo"
    llm_api_key: str | None = None
    fixture_paths: list[str] = field(default_factory=list)
    api_keys: list[dict] = field(default_factory=list)  # {key_id, key, capacity?, refill_rate?, enabled?}
    max_sites: int = 500
    snapshot_path: str | None = None
    allow_cors: bool = True

    _ENV_FIELDS = {
        "host": str,
        "port": int,
        "bucket_capacity": float,
        "bucket_refill_rate": float,
        "cache_size": int,
        "workers": int,
        "job_ttl": float,
        "llm_backend_url": str,
        "llm_model": str,
        "llm_api_key": str,
        "max_sites": int,
        "snapshot_path": str,
    }

    @classmethod
    def load(cls, path: str | Path | None = None, env: dict | None = None) -> "GatewayConfig":
        """Read the JSON config file (if given), then apply env overrides.

        Every scalar field can be overridden via ``MATAGENT_<FIELD_NAME>``
        in upper case, e.g. ``MATAGENT_PORT=9000``.
        """
        data: dict = {}
        if path is not None:
            data = json.loads(Path(path).read_text())
        config = cls(**data)
        env = os.environ if env is None else env
        for name, cast in cls._ENV_FIELDS.items():
            raw = env.get(ENV_PREFIX + name.upper())
            if raw is not None:
                setattr(config, name, cast(raw))
        return config
