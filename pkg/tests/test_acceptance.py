"""Acceptance suite: one test per release criterion, each printing a
PASS line with its measured runtime (run with ``pytest -v -s``).

Tolerances are pinned here, not configurable.
"""

import json
import math
import socket
import threading
import time

import numpy as np
import pytest
import requests
import uvicorn
from fastapi.testclient import TestClient

from matagent.agent import ExecutionPolicy, LlmParams, ScriptedBackend, run_agent
from matagent.agent.case_studies import DEFECT_PIPELINE_QUERY, load_fixtures
from matagent.bench import (
    StubTarget,
    TpsResult,
    load_sim,
    parity_stats,
    percentile_nearest_rank,
    speedup_table,
)
from matagent.elements import atomic_number
from matagent.gateway import GatewayConfig, create_app
from matagent.structure import grouped_sites, parse_poscar, serialize_poscar
from matagent.tools import ToolCall, best_match, build_registry, get_record
from matagent.tools.interface import NoMatchWithinToleranceError
from matagent.xrd import CU_KA, simulate_pxrd, structure_factor_sq

from conftest import diamond_cell, fcc_cell, logical_clock, random_structure, sc_cell

PARAMS = LlmParams(model="scripted-test", temperature=0)


class criterion:
    """Times a criterion and prints its PASS line with the runtime bound."""

    def __init__(self, name: str, max_seconds: float | None = None):
        self.name = name
        self.max_seconds = max_seconds

    def __enter__(self):
        self.started = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.started
        if exc_type is not None:
            print(f"FAIL  {self.name}  ({elapsed:.2f}s)")
            return False
        if self.max_seconds is not None and elapsed >= self.max_seconds:
            print(f"FAIL  {self.name}  runtime {elapsed:.2f}s >= {self.max_seconds}s")
            raise AssertionError(
                f"{self.name}: runtime {elapsed:.2f}s exceeds the {self.max_seconds}s budget"
            )
        print(f"PASS  {self.name}  ({elapsed:.2f}s)")
        return False


def test_speedup_arithmetic():
    with criterion("speedup arithmetic reproduces published ratios", max_seconds=1.0):
        baseline = TpsResult.from_mean("llama-3.2-90b-vision-instruct", 36.1)
        others = [
            TpsResult.from_mean("gpt-oss-20b", 141.7),
            TpsResult.from_mean("gpt-oss-120b", 122.3),
            TpsResult.from_mean("qwen3-next-80b", 95.8),
            TpsResult.from_mean("kimi-k2", 53.3),
        ]
        rows = {r["model"]: r["speedup"] for r in speedup_table(baseline, others)}
        tol = 0.01 + 1e-9
        assert abs(rows["gpt-oss-20b"] - 3.93) <= tol
        assert abs(rows["gpt-oss-120b"] - 3.39) <= tol
        assert abs(rows["qwen3-next-80b"] - 2.66) <= tol
        assert abs(rows["kimi-k2"] - 1.48) <= tol


def test_xrd_positions():
    with criterion("Si XRD: (111) at 28.44 deg, forbidden (200) silent", max_seconds=5.0):
        pattern = simulate_pxrd(diamond_cell("Si", 5.43), CU_KA, (20.0, 90.0), 0.02, 0.1)
        assert pattern.peaks
        assert abs(pattern.peaks[0].two_theta - 28.44) <= 0.05
        window = (pattern.two_theta >= 32.7) & (pattern.two_theta <= 33.3)
        assert pattern.intensity[window].max() < 1.0  # below 1% of the 100 max


def test_systematic_absences():
    with criterion("200 random FCC cells: mixed-parity |F|^2/Z^2 < 1e-9", max_seconds=10.0):
        rng = np.random.default_rng(7)
        elements = ["Al", "Cu", "Ni", "Ag", "Au", "Pt", "Pb"]
        checked = 0
        while checked < 200:
            a = float(rng.uniform(3.0, 6.5))
            el = elements[int(rng.integers(0, len(elements)))]
            cell = fcc_cell(el, a)
            z = atomic_number(el)
            for h in range(-3, 4):
                for k in range(-3, 4):
                    for l in range(-3, 4):
                        same = (h + k) % 2 == 0 and (k + l) % 2 == 0 and (h + l) % 2 == 0
                        if same or (h == k == l == 0):
                            continue
                        assert structure_factor_sq(cell, (h, k, l)) / z**2 < 1e-9
            checked += 1


def test_poscar_roundtrip():
    with criterion("500 random structures: round-trip drift <= 1e-12"):
        rng = np.random.default_rng(20240811)
        for _ in range(500):
            s = random_structure(rng)
            t = parse_poscar(serialize_poscar(s))
            reference = grouped_sites(s)
            assert np.max(np.abs(t.lattice.matrix - s.lattice.matrix)) <= 1e-12
            assert [x.element for x in t.sites] == [x.element for x in reference]
            drift = np.abs(
                np.array([x.frac for x in t.sites]) - np.array([x.frac for x in reference])
            )
            assert drift.max() <= 1e-12


def test_defect_pipeline():
    with criterion("10-step defect pipeline: success, data passing, byte identity",
                   max_seconds=30.0):
        registry = build_registry()
        backend = ScriptedBackend(load_fixtures())

        def policy():
            return ExecutionPolicy(max_parallel=1, clock=logical_clock(), sleep=lambda s: None)

        first = run_agent(DEFECT_PIPELINE_QUERY, registry, backend, PARAMS, policy())
        assert len(first.trace) == 10
        assert [r.status for r in first.trace] == ["success"] * 10
        expected_sequence = [
            "jarvis_dft_query",
            "get_structure",
            "make_supercell",
            "substitute_atom",
            "relax_structure",
            "simulate_pxrd",
            "predict_properties",
            "compute_bandstructure",
            "synthesize_report",
            "synthesize_report",
        ]
        assert [r.tool for r in first.trace] == expected_sequence
        by_id = {r.step_id: r for r in first.trace}
        assert by_id[2].resolved_arguments["jid"] == by_id[1].result["records"][0]["jid"]
        assert by_id[3].resolved_arguments["poscar"] == by_id[2].result["poscar"]
        assert by_id[4].resolved_arguments["poscar"] == by_id[3].result["poscar"]
        assert by_id[5].resolved_arguments["poscar"] == by_id[4].result["poscar"]
        for sid in (6, 7, 8):
            assert by_id[sid].resolved_arguments["poscar"] == by_id[5].result["final"]
        second = run_agent(DEFECT_PIPELINE_QUERY, registry, backend, PARAMS, policy())
        assert first.to_json().encode("utf-8") == second.to_json().encode("utf-8")


def test_stub_direction_bandgap_increase():
    with criterion("Al-substituted GaN bandgap exceeds pristine (stub direction)"):
        registry = build_registry()
        backend = ScriptedBackend(load_fixtures())
        policy = ExecutionPolicy(max_parallel=1, clock=logical_clock(), sleep=lambda s: None)
        resp = run_agent(DEFECT_PIPELINE_QUERY, registry, backend, PARAMS, policy)
        substituted = {r.step_id: r for r in resp.trace}[7].result["bandgap_opt"]
        pristine = registry.invoke(
            ToolCall("predict_properties", {"poscar": get_record("JVASP-30").poscar}, "t")
        )["bandgap_opt"]
        assert substituted > pristine


def _free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


def test_token_bucket_under_concurrency():
    with criterion("16 concurrent clients, cap 20 + 5/s, 10s: accepted <= 71",
                   max_seconds=15.0):
        capacity, rate, duration = 20.0, 5.0, 10.0
        config = GatewayConfig(
            api_keys=[{"key_id": "load", "key": "load-key",
                       "capacity": capacity, "refill_rate": rate}],
            port=_free_port(),
        )
        app = create_app(config)
        server = uvicorn.Server(
            uvicorn.Config(app, host="127.0.0.1", port=config.port, log_level="error")
        )
        thread = threading.Thread(target=server.run, daemon=True)
        thread.start()
        for _ in range(200):
            if server.started:
                break
            time.sleep(0.02)
        assert server.started, "uvicorn did not start"

        url = f"http://127.0.0.1:{config.port}/jarvis_dft/query"
        headers = {"Authorization": "Bearer load-key"}
        accepted = []
        denied = []
        bad_retry_after = []
        deadline = time.monotonic() + duration

        def hammer():
            session = requests.Session()
            while time.monotonic() < deadline:
                r = session.post(url, json={"formula": "Si"}, headers=headers, timeout=10)
                if r.status_code == 200:
                    accepted.append(1)
                elif r.status_code == 429:
                    denied.append(1)
                    retry_after = r.headers.get("Retry-After")
                    if retry_after is None or int(retry_after) < 1:
                        bad_retry_after.append(retry_after)
                else:
                    bad_retry_after.append(f"unexpected {r.status_code}")

        clients = [threading.Thread(target=hammer) for _ in range(16)]
        started_at = time.monotonic()
        for c in clients:
            c.start()
        for c in clients:
            c.join()
        window = time.monotonic() - started_at

        server.should_exit = True
        thread.join(5)

        assert bad_retry_after == []
        assert len(denied) > 0, "the limiter never engaged"
        # the hard bound from the acceptance criterion, on the nominal window
        assert len(accepted) <= capacity + rate * duration + 1, (len(accepted), window)


def test_sync_async_equivalence():
    with criterion("sync/async equivalence on every pure endpoint"):
        config = GatewayConfig(
            api_keys=[{"key_id": "t", "key": "k", "capacity": 10000, "refill_rate": 10000}]
        )
        client = TestClient(create_app(config))
        headers = {"Authorization": "Bearer k"}
        cases = [
            ("/jarvis_dft/query", {"elements": ["Ga", "N"]}),
            ("/alignn/query", {"jid": "JVASP-1002"}),
            ("/alignn_ff/query", {"jid": "JVASP-30", "max_steps": 5}),
            ("/generate_interface", {"jid_a": "JVASP-816", "jid_b": "JVASP-816", "max_area": 40}),
            ("/pxrd/query", {"jid": "JVASP-1002", "two_theta_min": 20, "two_theta_max": 40}),
            ("/slakonet/bandstructure", {"jid": "JVASP-30", "npoints": 12}),
        ]
        for path, body in cases:
            sync = client.post(path, json=body, headers=headers).json()
            job_id = client.post(
                "/jobs", json={"endpoint": path, "body": body}, headers=headers
            ).json()["job_id"]
            deadline = time.monotonic() + 30
            while time.monotonic() < deadline:
                record = client.get(f"/jobs/{job_id}", headers=headers).json()
                if record["state"] in ("done", "failed"):
                    break
                time.sleep(0.01)
            assert record["state"] == "done", (path, record)
            assert record["result"] == sync, path


def test_parity_metrics():
    with criterion("parity stats: exact MAE/R^2 cases and percentile oracle"):
        perfect = parity_stats([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
        assert perfect.mae == 0.0 and perfect.r_squared == 1.0
        assert parity_stats([1.0, 2.0], [2.0, 4.0]).mae == pytest.approx(1.5)
        rng = np.random.default_rng(2024)
        for _ in range(100):
            n = int(rng.integers(1, 250))
            samples = rng.uniform(0, 1, n).tolist()
            for q in (50, 95):
                ordered = sorted(samples)
                rank = max(1, math.ceil(q / 100 * n))
                assert percentile_nearest_rank(samples, q) == ordered[rank - 1]


def test_interface_builder_oracle():
    with criterion("interface matching agrees with exhaustive enumeration"):
        import itertools

        def brute_force(a, b, max_area, strain_tol):
            la = np.linalg.norm(a.lattice.matrix[:2], axis=1)
            lb = np.linalg.norm(b.lattice.matrix[:2], axis=1)
            area_a = float(np.linalg.norm(np.cross(a.lattice.matrix[0], a.lattice.matrix[1])))
            area_b = float(np.linalg.norm(np.cross(b.lattice.matrix[0], b.lattice.matrix[1])))
            cap = int(max_area / min(area_a, area_b)) + 1
            found = []
            for i, j, k, l in itertools.product(range(1, cap + 1), repeat=4):
                if i * j * area_a > max_area or k * l * area_b > max_area:
                    continue
                e1 = abs(i * la[0] - k * lb[0]) / (k * lb[0])
                e2 = abs(j * la[1] - l * lb[1]) / (l * lb[1])
                strain = 0.5 * (e1 + e2)
                if strain <= strain_tol:
                    found.append((strain, i * j * area_a + k * l * area_b, (i, j, k, l)))
            return min(found) if found else None

        pairs = [
            (sc_cell("Po", 4.0), sc_cell("Po", 4.0)),
            (sc_cell("Po", 4.0), sc_cell("Po", 2.0)),
            (sc_cell("Po", 3.9), sc_cell("Po", 4.1)),
            (fcc_cell("Al", 4.05), diamond_cell("Si", 5.43)),
            (
                parse_poscar(get_record("JVASP-30").poscar),
                parse_poscar(get_record("JVASP-39").poscar),
            ),
        ]
        for a, b in pairs:
            oracle = brute_force(a, b, 60.0, 0.06)
            if oracle is None:
                with pytest.raises(NoMatchWithinToleranceError):
                    best_match(a, b, max_area=60.0, strain_tol=0.06)
            else:
                cells, strain = best_match(a, b, max_area=60.0, strain_tol=0.06)
                assert cells == oracle[2] and strain == pytest.approx(oracle[0], rel=1e-12)
        # the pinned no-match case
        with pytest.raises(NoMatchWithinToleranceError) as err:
            best_match(sc_cell("Po", 4.0), sc_cell("Po", 3.1), max_area=50.0, strain_tol=0.01)
        assert err.value.best_strain is not None and err.value.best_strain > 0.01


def test_determinism_contract_cached_endpoints():
    with criterion("tool endpoints: identical bodies -> byte-identical, cached"):
        config = GatewayConfig(
            api_keys=[{"key_id": "d", "key": "dk", "capacity": 10000, "refill_rate": 10000}]
        )
        client = TestClient(create_app(config))
        headers = {"Authorization": "Bearer dk"}
        cases = [
            ("/jarvis_dft/query", {"elements": ["Ga", "N"]}),
            ("/alignn/query", {"jid": "JVASP-30"}),
            ("/alignn_ff/query", {"jid": "JVASP-30", "max_steps": 5}),
            ("/generate_interface", {"jid_a": "JVASP-816", "jid_b": "JVASP-816", "max_area": 40}),
            ("/pxrd/query", {"jid": "JVASP-1002", "two_theta_min": 20, "two_theta_max": 40}),
            ("/slakonet/bandstructure", {"jid": "JVASP-30", "npoints": 12}),
        ]
        for path, body in cases:
            r1 = client.post(path, json=body, headers=headers)
            r2 = client.post(path, json=body, headers=headers)
            assert r1.status_code == r2.status_code == 200, path
            assert r1.headers["cache"] == "miss"
            assert r2.headers["cache"] == "hit"
            assert r1.content == r2.content, path


def test_load_sim_exactness_supplement():
    """Declared substitute for the paper's hardware-bound 16.641s mean: the
    harness is validated on an exactly checkable stub instead."""
    with criterion("load harness: stub statistics exactly checkable"):
        target = StubTarget([x / 1000.0 for x in range(1, 101)], sleep_scale=0.0)
        report = load_sim(target, n_users=10, ramp=0.0, requests_per_user=10)
        assert report.mean * 1000 == pytest.approx(50.5, abs=1e-9)
        assert report.p50 * 1000 == pytest.approx(50.0, abs=1e-9)
        assert report.p95 * 1000 == pytest.approx(95.0, abs=1e-9)
