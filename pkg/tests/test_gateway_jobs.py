import json
import threading
import time

import pytest
from fastapi.testclient import TestClient

from matagent.gateway import GatewayConfig, JobStore, UnknownJobError, create_app

KEY = "jobs-key"
AUTH = {"Authorization": f"Bearer {KEY}"}


@pytest.fixture()
def app():
    config = GatewayConfig(
        api_keys=[{"key_id": "jobs", "key": KEY, "capacity": 10000, "refill_rate": 10000}],
        workers=4,
    )
    return create_app(config)


@pytest.fixture()
def client(app):
    return TestClient(app, raise_server_exceptions=False)


def wait_done(client, job_id, timeout=20.0):
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        record = client.get(f"/jobs/{job_id}", headers=AUTH).json()
        if record["state"] in ("done", "failed"):
            return record
        time.sleep(0.01)
    raise TimeoutError("job did not finish")


def test_async_mode_equals_sync(client):
    body = {"jid": "JVASP-30", "max_steps": 10}
    sync = client.post("/alignn_ff/query", json=body, headers=AUTH)
    submitted = client.post("/alignn_ff/query?mode=async", json=body, headers=AUTH)
    assert submitted.status_code == 202
    record = wait_done(client, submitted.json()["job_id"])
    assert record["state"] == "done"
    assert record["result"] == sync.json()


def test_sync_async_equivalence_every_pure_endpoint(client):
    cases = [
        ("/jarvis_dft/query", {"elements": ["Ga", "N"]}),
        ("/alignn/query", {"jid": "JVASP-1002"}),
        ("/alignn_ff/query", {"jid": "JVASP-30", "max_steps": 5}),
        ("/generate_interface", {"jid_a": "JVASP-816", "jid_b": "JVASP-816", "max_area": 40}),
        ("/pxrd/query", {"jid": "JVASP-1002", "two_theta_min": 20, "two_theta_max": 40}),
        ("/slakonet/bandstructure", {"jid": "JVASP-30", "npoints": 12}),
    ]
    for path, body in cases:
        sync = client.post(path, json=body, headers=AUTH).json()
        job_id = client.post("/jobs", json={"endpoint": path, "body": body}, headers=AUTH).json()[
            "job_id"
        ]
        record = wait_done(client, job_id)
        assert record["state"] == "done", (path, record["error"])
        assert record["result"] == sync, path


def test_job_lifecycle_states(client):
    r = client.post(
        "/jobs",
        json={"endpoint": "/pxrd/query", "body": {"jid": "JVASP-1002"}},
        headers=AUTH,
    )
    assert r.status_code == 202
    record = wait_done(client, r.json()["job_id"])
    assert record["state"] == "done"
    assert record["created"] <= record["updated"]


def test_failed_job_records_error(client):
    job_id = client.post(
        "/jobs",
        json={"endpoint": "/alignn/query", "body": {"jid": "JVASP-0"}},
        headers=AUTH,
    ).json()["job_id"]
    record = wait_done(client, job_id)
    assert record["state"] == "failed"
    assert "JVASP-0" in record["error"]


def test_unknown_job_404_mentions_ttl(client):
    r = client.get("/jobs/does-not-exist", headers=AUTH)
    assert r.status_code == 404
    assert "purged" in r.json()["hint"]


def test_unknown_endpoint_rejected(client):
    r = client.post("/jobs", json={"endpoint": "/nope", "body": {}}, headers=AUTH)
    assert r.status_code == 400  # enum violation in the submit schema


def test_pool_bound_is_respected():
    store = JobStore(workers=4, ttl=60)
    gate = threading.Event()

    def runner(endpoint, body):
        gate.wait(5.0)
        return {"ok": True}

    ids = [store.submit("/x", {}, runner) for _ in range(100)]
    time.sleep(0.2)  # let the pool saturate
    gate.set()
    deadline = time.monotonic() + 20
    while time.monotonic() < deadline:
        states = {store.poll(j).state for j in ids}
        if states == {"done"}:
            break
        time.sleep(0.02)
    assert store.peak_running <= 4
    store.shutdown()


def test_ttl_purges_completed_jobs():
    now = {"t": 0.0}
    store = JobStore(workers=1, ttl=10.0, clock=lambda: now["t"])
    job_id = store.submit("/x", {}, lambda e, b: {"ok": 1})
    deadline = time.monotonic() + 5
    while time.monotonic() < deadline and store.poll(job_id).state != "done":
        time.sleep(0.01)
    assert store.poll(job_id).state == "done"
    now["t"] = 11.0
    with pytest.raises(UnknownJobError):
        store.poll(job_id)
    store.shutdown()


def test_snapshot_restores_keys_and_jobs(tmp_path):
    snap = tmp_path / "state.json"
    config = GatewayConfig(
        api_keys=[{"key_id": "snap", "key": KEY, "capacity": 100, "refill_rate": 100}],
        snapshot_path=str(snap),
    )
    with TestClient(create_app(config)) as client:
        job_id = client.post(
            "/jobs",
            json={"endpoint": "/jarvis_dft/query", "body": {"formula": "Si"}},
            headers=AUTH,
        ).json()["job_id"]
        wait_done(client, job_id)
    assert snap.exists()
    saved = json.loads(snap.read_text())
    assert saved["keys"][0]["key_id"] == "snap"
    assert KEY not in json.dumps(saved)  # plaintext secret is never written
    assert set(saved["keys"][0]) <= {
        "key_id", "secret_hash", "capacity", "refill_rate", "tokens", "enabled",
    }

    # a fresh process restores the key and the completed job
    with TestClient(create_app(GatewayConfig(snapshot_path=str(snap)))) as client2:
        record = client2.get(f"/jobs/{job_id}", headers=AUTH).json()
        assert record["state"] == "done"
