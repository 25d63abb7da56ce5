#!/usr/bin/env python3
"""Record gateway transcripts for the frontend test suite.

Captures, from a real in-process gateway run: the streamed SSE frames of
the 10-step defect query, a sample 429 response, a sample 401, and the
OpenAPI document. The frontend tests replay these verbatim.

    python3 scripts/record_frontend_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from matagent.agent.case_studies import DEFECT_PIPELINE_QUERY, PXRD_QUERY
from matagent.gateway import GatewayConfig, create_app

OUT_DIR = Path(__file__).resolve().parent.parent / "frontend/tests/fixtures"
KEY = "frontend-recording-key"


def record_stream(client, query: str) -> list[dict]:
    frames = []
    with client.stream(
        "POST",
        "/agent/chat",
        json={"query": query, "stream": True},
        headers={"Authorization": f"Bearer {KEY}"},
    ) as resp:
        assert resp.status_code == 200
        for line in resp.iter_lines():
            if line.startswith("data: "):
                frames.append(json.loads(line[len("data: ") :]))
    return frames


def main() -> None:
    config = GatewayConfig(
        api_keys=[{"key_id": "recorder", "key": KEY, "capacity": 10000, "refill_rate": 10000}]
    )
    client = TestClient(create_app(config))

    defect_frames = record_stream(client, DEFECT_PIPELINE_QUERY)
    pxrd_frames = record_stream(client, PXRD_QUERY)

    pattern = client.post(
        "/pxrd/query",
        json={"jid": "JVASP-1002", "two_theta_min": 20, "two_theta_max": 90},
        headers={"Authorization": f"Bearer {KEY}"},
    ).json()

    tiny = GatewayConfig(api_keys=[{"key_id": "t", "key": "t", "capacity": 1, "refill_rate": 1}])
    tiny_client = TestClient(create_app(tiny))
    tiny_client.post("/jarvis_dft/query", json={"formula": "Si"},
                     headers={"Authorization": "Bearer t"})
    limited = tiny_client.post("/jarvis_dft/query", json={"formula": "Si"},
                               headers={"Authorization": "Bearer t"})
    assert limited.status_code == 429

    unauthorized = client.post("/jarvis_dft/query", json={"formula": "Si"})
    assert unauthorized.status_code == 401

    openapi = client.get("/openapi.json").json()

    OUT_DIR.mkdir(parents=True, exist_ok=True)
    (OUT_DIR / "defect_transcript.json").write_text(
        json.dumps({"query": DEFECT_PIPELINE_QUERY, "frames": defect_frames}, indent=1)
    )
    (OUT_DIR / "pxrd_transcript.json").write_text(
        json.dumps({"query": PXRD_QUERY, "frames": pxrd_frames}, indent=1)
    )
    (OUT_DIR / "pattern_response.json").write_text(json.dumps(pattern, indent=1))
    (OUT_DIR / "rate_limited.json").write_text(
        json.dumps(
            {
                "status": limited.status_code,
                "retry_after": limited.headers["Retry-After"],
                "body": limited.json(),
            },
            indent=1,
        )
    )
    (OUT_DIR / "unauthorized.json").write_text(
        json.dumps({"status": unauthorized.status_code, "body": unauthorized.json()}, indent=1)
    )
    (OUT_DIR / "openapi.json").write_text(json.dumps(openapi, indent=1))
    print(f"recorded {len(defect_frames)} defect frames, {len(pxrd_frames)} pxrd frames -> {OUT_DIR}")


if __name__ == "__main__":
    main()
