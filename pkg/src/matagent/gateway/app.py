"""The REST gateway: routing, auth, rate limiting, caching, jobs, agent chat.

Request flow for tool endpoints: bearer-key auth, token-bucket acquire,
route-schema validation, response cache, then the tool invocation. All
non-2xx responses share the {code, message, hint} envelope; 429 carries a
positive Retry-After header.
"""

from __future__ import annotations

import json
import math
import queue as queue_mod
import threading
import time
from contextlib import asynccontextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse, StreamingResponse
from starlette.exceptions import HTTPException as StarletteHTTPException
from starlette.middleware.cors import CORSMiddleware

from .. import __version__
from ..agent import (
    ExecutionPolicy,
    HttpBackend,
    LlmParams,
    ScriptedBackend,
    run_agent,
    tokenize,
)
from ..agent.case_studies import load_fixtures
from ..errors import MatagentError
from ..tools import HandlerFailureError, ToolCall, ToolRegistry, build_registry, get_record
from ..tools.registry import SchemaViolationError, _validate
from .auth import AuthError, KeyStore
from .cache import ResponseCache, canonical_key
from .config import GatewayConfig
from .jobs import JobStore, UnknownJobError
from .openapi import AGENT_CHAT_SCHEMA, build_openapi, job_submit_schema

_STATUS_BY_CODE = {
    "auth": 401,
    "schema_violation": 400,
    "not_found": 404,
    "unknown_job": 404,
    "unknown_tool": 404,
    "not_enabled": 503,
    # unphysical or unusable input
    "limit_exceeded": 422,
    "too_many_sites": 422,
    "site_count_out_of_range": 422,
    "structure": 422,
    "malformed_input": 422,
    "count_mismatch": 422,
    "non_finite_number": 422,
    "unknown_element": 422,
    "zero_vector": 422,
    "invalid_range": 422,
    "empty_filter": 422,
    "empty_structure": 422,
    "index_out_of_range": 422,
    "no_match_within_tolerance": 422,
    "area_cap_exceeded": 422,
    "message": 422,
}


class GatewayHTTPError(Exception):
    def __init__(self, status: int, code: str, message: str, hint: str = "", headers: dict | None = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.hint = hint
        self.headers = headers or {}


def _envelope(status: int, code: str, message: str, hint: str = "", headers: dict | None = None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "hint": hint},
        headers=headers or {},
    )


def _from_matagent_error(exc: MatagentError) -> GatewayHTTPError:
    if isinstance(exc, HandlerFailureError) and isinstance(exc.cause, MatagentError):
        inner = exc.cause
        status = _STATUS_BY_CODE.get(inner.code, 500)
        return GatewayHTTPError(status, inner.code, inner.message, inner.hint)
    status = _STATUS_BY_CODE.get(exc.code, 500)
    return GatewayHTTPError(status, exc.code, exc.message, exc.hint)


@dataclass(frozen=True)
class RouteSpec:
    path: str
    tool: str
    summary: str
    description: str
    request_schema: dict
    result_schema: dict
    adapt: Callable[[dict], dict]


def _with_jid_alternative(param_schema: dict, poscar_fields: list[str]) -> dict:
    """Allow {jid} in place of each poscar field at the HTTP boundary."""
    schema = json.loads(json.dumps(param_schema))  # deep copy
    props = schema["properties"]
    required = [r for r in schema.get("required", []) if r not in poscar_fields]
    any_ofs = []
    for fieldname in poscar_fields:
        jid_field = "jid" if fieldname == "poscar" else fieldname.replace("poscar", "jid")
        props[jid_field] = {
            "type": "string",
            "description": f"database id resolved to {fieldname} server-side",
        }
        any_ofs.append({"anyOf": [{"required": [fieldname]}, {"required": [jid_field]}]})
    schema["required"] = required
    if len(any_ofs) == 1:
        schema.update(any_ofs[0])
    else:
        schema["allOf"] = any_ofs
    return schema


def _resolve_jid_fields(body: dict, poscar_fields: list[str]) -> dict:
    args = dict(body)
    for fieldname in poscar_fields:
        jid_field = "jid" if fieldname == "poscar" else fieldname.replace("poscar", "jid")
        if jid_field in args:
            jid = args.pop(jid_field)
            if fieldname not in args:
                args[fieldname] = get_record(jid).poscar
    return args


def build_route_specs(registry: ToolRegistry) -> list[RouteSpec]:
    def spec(path: str, tool: str, summary: str, poscar_fields: list[str]) -> RouteSpec:
        descriptor = registry.descriptor(tool)
        if poscar_fields:
            request_schema = _with_jid_alternative(descriptor.param_schema, poscar_fields)
        else:
            request_schema = descriptor.param_schema

        def adapt(body: dict, _fields=tuple(poscar_fields)) -> dict:
            return _resolve_jid_fields(body, list(_fields)) if _fields else dict(body)

        return RouteSpec(
            path=path,
            tool=tool,
            summary=summary,
            description=descriptor.description,
            request_schema=request_schema,
            result_schema=descriptor.result_schema,
            adapt=adapt,
        )

    return [
        spec("/jarvis_dft/query", "jarvis_dft_query", "Query the materials database", []),
        spec("/alignn/query", "predict_properties", "Predict properties for a structure or jid", ["poscar"]),
        spec("/alignn_ff/query", "relax_structure", "Relax a structure with the toy force field", ["poscar"]),
        spec("/generate_interface", "generate_interface", "Build a low-strain interface", ["poscar_a", "poscar_b"]),
        spec("/pxrd/query", "simulate_pxrd", "Simulate a powder XRD pattern", ["poscar"]),
        spec("/slakonet/bandstructure", "compute_bandstructure", "Compute a model band structure", ["poscar"]),
    ]


class Gateway:
    """Holds the single-process state shared by all request handlers."""

    def __init__(
        self,
        config: GatewayConfig,
        registry: ToolRegistry | None = None,
        backend=None,
    ):
        self.config = config
        self.registry = registry or build_registry(max_sites=config.max_sites)
        self.backend = backend or self._default_backend(config)
        self.keys = KeyStore()
        for entry in config.api_keys:
            self.keys.add(
                key_id=entry["key_id"],
                secret=entry.get("key"),
                secret_hash=entry.get("key_hash"),
                capacity=entry.get("capacity", config.bucket_capacity),
                refill_rate=entry.get("refill_rate", config.bucket_refill_rate),
                enabled=entry.get("enabled", True),
            )
        self.cache = ResponseCache(config.cache_size)
        self.jobs = JobStore(workers=config.workers, ttl=config.job_ttl)
        self.policy = ExecutionPolicy()
        self.route_specs = build_route_specs(self.registry)
        self.routes_by_path = {s.path: s for s in self.route_specs}
        self.invocations: dict[str, int] = {}  # per-endpoint handler-call gauge
        self._invocations_lock = threading.Lock()

    @staticmethod
    def _default_backend(config: GatewayConfig):
        if config.llm_backend_url:
            return HttpBackend(config.llm_backend_url, api_key=config.llm_api_key)
        fixtures = dict(load_fixtures())
        for path in config.fixture_paths:
            fixtures.update(json.loads(Path(path).read_text()))
        return ScriptedBackend(fixtures)

    # -- request plumbing ---------------------------------------------------

    def authenticate(self, request: Request):
        try:
            record = self.keys.authenticate(request.headers.get("Authorization"))
        except AuthError as exc:
            raise GatewayHTTPError(401, exc.code, exc.message, exc.hint) from exc
        allowed, wait = record.bucket.acquire(1.0, now=time.monotonic())
        if not allowed:
            retry_after = max(1, math.ceil(wait))
            raise GatewayHTTPError(
                429,
                "rate_limited",
                f"rate limit exceeded for key {record.key_id}",
                hint=f"retry after {retry_after}s",
                headers={"Retry-After": str(retry_after)},
            )
        return record

    def compute(self, path: str, body: dict) -> dict:
        """Validated tool invocation for a route; shared by sync and jobs."""
        spec = self.routes_by_path.get(path)
        if spec is None:
            raise GatewayHTTPError(404, "unknown_endpoint", f"no endpoint {path!r}",
                                   hint=", ".join(self.routes_by_path))
        _validate(spec.request_schema, body, f"request body for {path}")
        args = spec.adapt(body)
        with self._invocations_lock:
            self.invocations[path] = self.invocations.get(path, 0) + 1
        return self.registry.invoke(ToolCall(tool=spec.tool, arguments=args, call_id=f"http-{spec.tool}"))

    def agent_params(self, body: dict) -> LlmParams:
        return LlmParams(
            model=body.get("model") or self.config.llm_model,
            temperature=float(body.get("temperature", 0.0)),
        )


def create_app(
    config: GatewayConfig | None = None,
    registry: ToolRegistry | None = None,
    backend=None,
) -> FastAPI:
    config = config or GatewayConfig()
    gw = Gateway(config, registry=registry, backend=backend)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        if config.snapshot_path and Path(config.snapshot_path).exists():
            snap = json.loads(Path(config.snapshot_path).read_text())
            for entry in snap.get("keys", []):
                if entry["secret_hash"] not in {r.secret_hash for r in gw.keys.records()}:
                    gw.keys.add(
                        key_id=entry["key_id"],
                        secret_hash=entry["secret_hash"],
                        capacity=entry.get("capacity", config.bucket_capacity),
                        refill_rate=entry.get("refill_rate", config.bucket_refill_rate),
                        enabled=entry.get("enabled", True),
                        tokens=entry.get("tokens"),
                    )
            gw.jobs.load_snapshot(snap.get("jobs", []))
        yield
        if config.snapshot_path:
            snap = {"keys": gw.keys.snapshot(), "jobs": gw.jobs.snapshot()}
            Path(config.snapshot_path).write_text(json.dumps(snap, indent=1))
        gw.jobs.shutdown()

    app = FastAPI(openapi_url=None, docs_url=None, redoc_url=None, lifespan=lifespan)
    app.state.gateway = gw
    if config.allow_cors:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=["*"],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(GatewayHTTPError)
    async def handle_gateway_error(request: Request, exc: GatewayHTTPError):
        return _envelope(exc.status, exc.code, exc.message, exc.hint, exc.headers)

    @app.exception_handler(MatagentError)
    async def handle_matagent_error(request: Request, exc: MatagentError):
        mapped = _from_matagent_error(exc)
        return _envelope(mapped.status, mapped.code, mapped.message, mapped.hint)

    @app.exception_handler(StarletteHTTPException)
    async def handle_http_error(request: Request, exc: StarletteHTTPException):
        return _envelope(exc.status_code, "http_error", str(exc.detail), "")

    @app.exception_handler(Exception)
    async def handle_unexpected(request: Request, exc: Exception):
        return _envelope(500, "internal_error", f"{type(exc).__name__}: {exc}",
                         "report this request body to the operators")

    @app.get("/health")
    async def health():
        return {"status": "ok", "version": __version__}

    openapi_doc = build_openapi(gw.route_specs, [s.path for s in gw.route_specs])

    @app.get("/openapi.json")
    async def openapi():
        return openapi_doc

    async def read_json_body(request: Request) -> dict:
        try:
            body = await request.json()
        except Exception as exc:  # noqa: BLE001
            raise GatewayHTTPError(400, "schema_violation", f"request body is not valid JSON: {exc}",
                                   hint="send a JSON object") from exc
        if not isinstance(body, dict):
            raise GatewayHTTPError(400, "schema_violation", "request body must be a JSON object",
                                   hint="send a JSON object")
        return body

    def make_tool_handler(spec: RouteSpec):
        async def handler(request: Request):
            gw.authenticate(request)
            body = await read_json_body(request)
            if request.query_params.get("mode") == "async":
                job_id = gw.jobs.submit(spec.path, body, gw.compute)
                return JSONResponse(status_code=202, content={"job_id": job_id})
            key = canonical_key(spec.path, body)
            cached = gw.cache.get(key)
            if cached is not None:
                return Response(content=cached, media_type="application/json",
                                headers={"cache": "hit"})
            try:
                result = gw.compute(spec.path, body)
            except SchemaViolationError as exc:
                raise GatewayHTTPError(400, exc.code, exc.message, exc.hint) from exc
            payload = json.dumps(result, separators=(",", ":"), ensure_ascii=False).encode("utf-8")
            gw.cache.put(key, payload)
            return Response(content=payload, media_type="application/json",
                            headers={"cache": "miss"})

        return handler

    for spec in gw.route_specs:
        app.post(spec.path)(make_tool_handler(spec))

    @app.post("/jobs")
    async def submit_job(request: Request):
        gw.authenticate(request)
        body = await read_json_body(request)
        try:
            _validate(job_submit_schema([s.path for s in gw.route_specs]), body, "job submission")
        except SchemaViolationError as exc:
            raise GatewayHTTPError(400, exc.code, exc.message, exc.hint) from exc
        job_id = gw.jobs.submit(body["endpoint"], body["body"], gw.compute)
        return JSONResponse(status_code=202, content={"job_id": job_id})

    @app.get("/jobs/{job_id}")
    async def poll_job(job_id: str, request: Request):
        gw.authenticate(request)
        try:
            record = gw.jobs.poll(job_id)
        except UnknownJobError as exc:
            raise GatewayHTTPError(404, exc.code, exc.message, exc.hint) from exc
        return record.to_dict()

    @app.post("/agent/chat")
    async def agent_chat(request: Request):
        gw.authenticate(request)
        body = await read_json_body(request)
        try:
            _validate(AGENT_CHAT_SCHEMA, body, "agent chat request")
        except SchemaViolationError as exc:
            raise GatewayHTTPError(400, exc.code, exc.message, exc.hint) from exc
        params = gw.agent_params(body)
        wants_stream = bool(body.get("stream")) or request.query_params.get("stream") in ("1", "true")

        if wants_stream:
            return StreamingResponse(
                _agent_event_stream(gw, body["query"], params),
                media_type="text/event-stream",
            )

        cacheable = params.temperature == 0.0
        key = canonical_key("/agent/chat", body)
        if cacheable:
            cached = gw.cache.get(key)
            if cached is not None:
                return Response(content=cached, media_type="application/json",
                                headers={"cache": "hit"})
        response = run_agent(body["query"], gw.registry, gw.backend, params, gw.policy)
        payload = response.to_json().encode("utf-8")
        if cacheable:
            gw.cache.put(key, payload)
        return Response(content=payload, media_type="application/json", headers={"cache": "miss"})

    return app


def _agent_event_stream(gw: Gateway, query: str, params: LlmParams):
    """SSE frames: one plan, one per step, token deltas, then final."""
    events: queue_mod.Queue = queue_mod.Queue()
    done = object()

    def on_event(kind: str, payload: dict) -> None:
        events.put({"type": kind, kind: payload})

    def work():
        try:
            response = run_agent(query, gw.registry, gw.backend, params, gw.policy, on_event=on_event)
            for token in tokenize(response.answer):
                events.put({"type": "token", "text": token})
            events.put({"type": "final", "response": response.to_dict()})
        except Exception as exc:  # noqa: BLE001 - reported in-stream
            mapped = _from_matagent_error(exc) if isinstance(exc, MatagentError) else None
            events.put(
                {
                    "type": "error",
                    "error": {
                        "code": mapped.code if mapped else "internal_error",
                        "message": str(exc),
                        "hint": mapped.hint if mapped else "",
                    },
                }
            )
        finally:
            events.put(done)

    threading.Thread(target=work, daemon=True).start()
    while True:
        item = events.get()
        if item is done:
            break
        yield f"data: {json.dumps(item, ensure_ascii=False)}\n\n"
