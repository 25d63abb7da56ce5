"""Topological plan execution with data passing and graceful degradation.

Steps whose dependencies are all satisfied run concurrently up to
``max_parallel``. Placeholders like ``$step3.poscar`` are resolved against
predecessor results before invocation; a missing path fails the step
without calling the tool. A permanently failed step marks every transitive
dependent as skipped-failed. The returned trace is sorted by step_id, so
its order is independent of completion order.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass
from typing import Callable

from ..errors import MatagentError
from ..tools import HandlerFailureError, ToolCall, ToolRegistry
from .plan import PLACEHOLDER_RE, PlanStep, WorkflowPlan

STATUS_SUCCESS = "success"
STATUS_FAILED = "failed"
STATUS_SKIPPED = "skipped-failed"


class ResolutionError(MatagentError):
    """Argument template references a path the predecessor result lacks."""


class StepTimeoutError(MatagentError):
    """Tool invocation exceeded the per-step timeout."""


@dataclass(frozen=True)
class ExecutionPolicy:
    max_retries: int = 2
    step_timeout: float = 60.0
    max_parallel: int = 4
    retry_base_delay: float = 0.5  # doubles per retry, capped below
    retry_max_delay: float = 8.0
    context_budget: int = 4096  # tokens offered to the summarizer prompt
    clock: Callable[[], float] = time.time
    sleep: Callable[[float], None] = time.sleep


@dataclass
class StepRecord:
    step_id: int
    tool: str
    status: str
    resolved_arguments: dict | None
    result: dict | None
    error: str | None
    attempts: int
    started: float
    ended: float

    def to_dict(self) -> dict:
        return {
            "step_id": self.step_id,
            "tool": self.tool,
            "status": self.status,
            "resolved_arguments": self.resolved_arguments,
            "result": self.result,
            "error": self.error,
            "attempts": self.attempts,
            "started": self.started,
            "ended": self.ended,
        }


def _lookup_path(result: dict, path: str, step_id: int):
    node = result
    for part in path.split("."):
        if isinstance(node, list):
            try:
                node = node[int(part)]
                continue
            except (ValueError, IndexError) as exc:
                raise ResolutionError(
                    f"$step{step_id}.{path}: list index {part!r} invalid ({exc})"
                ) from None
        if not isinstance(node, dict) or part not in node:
            raise ResolutionError(f"$step{step_id}.{path}: no field {part!r} in result")
        node = node[part]
    return node


def resolve_template(value, results: dict[int, dict]):
    """Substitute ``$step<id>.<path>`` placeholders with predecessor data."""
    if isinstance(value, str):
        match = PLACEHOLDER_RE.fullmatch(value)
        if match:
            sid = int(match.group(1))
            path = match.group(2)
            result = results.get(sid)
            if result is None:
                raise ResolutionError(f"$step{sid}: no completed result available")
            return _lookup_path(result, path, sid) if path else result

        def _sub(m):
            sid = int(m.group(1))
            path = m.group(2)
            result = results.get(sid)
            if result is None:
                raise ResolutionError(f"$step{sid}: no completed result available")
            node = _lookup_path(result, path, sid) if path else result
            return str(node)

        return PLACEHOLDER_RE.sub(_sub, value)
    if isinstance(value, dict):
        return {k: resolve_template(v, results) for k, v in value.items()}
    if isinstance(value, list):
        return [resolve_template(v, results) for v in value]
    return value


def _invoke_with_timeout(registry: ToolRegistry, call: ToolCall, timeout: float) -> dict:
    box: dict = {}

    def runner():
        try:
            box["result"] = registry.invoke(call)
        except Exception as exc:  # noqa: BLE001 - transported to caller
            box["error"] = exc

    thread = threading.Thread(target=runner, daemon=True)
    thread.start()
    thread.join(timeout)
    if thread.is_alive():
        raise StepTimeoutError(f"tool {call.tool!r} exceeded the {timeout}s step timeout")
    if "error" in box:
        raise box["error"]
    return box["result"]


def _run_step(
    step: PlanStep,
    registry: ToolRegistry,
    results: dict[int, dict],
    policy: ExecutionPolicy,
) -> StepRecord:
    started = policy.clock()
    try:
        resolved = resolve_template(step.argument_template, results)
    except ResolutionError as exc:
        return StepRecord(
            step_id=step.step_id,
            tool=step.tool,
            status=STATUS_FAILED,
            resolved_arguments=None,
            result=None,
            error=str(exc),
            attempts=0,
            started=started,
            ended=policy.clock(),
        )

    call = ToolCall(tool=step.tool, arguments=resolved, call_id=f"step-{step.step_id}")
    attempts = 0
    last_error: Exception | None = None
    while attempts < policy.max_retries + 1:
        attempts += 1
        try:
            result = _invoke_with_timeout(registry, call, policy.step_timeout)
            return StepRecord(
                step_id=step.step_id,
                tool=step.tool,
                status=STATUS_SUCCESS,
                resolved_arguments=resolved,
                result=result,
                error=None,
                attempts=attempts,
                started=started,
                ended=policy.clock(),
            )
        except (HandlerFailureError, StepTimeoutError) as exc:
            # transient-class failures retry with exponential backoff
            last_error = exc
            if attempts < policy.max_retries + 1:
                delay = min(
                    policy.retry_base_delay * (2 ** (attempts - 1)), policy.retry_max_delay
                )
                policy.sleep(delay)
        except Exception as exc:  # noqa: BLE001 - schema/unknown-tool are permanent
            last_error = exc
            break
    return StepRecord(
        step_id=step.step_id,
        tool=step.tool,
        status=STATUS_FAILED,
        resolved_arguments=resolved,
        result=None,
        error=str(last_error),
        attempts=attempts,
        started=started,
        ended=policy.clock(),
    )


def execute(
    plan: WorkflowPlan,
    registry: ToolRegistry,
    policy: ExecutionPolicy | None = None,
    on_step: Callable[[StepRecord], None] | None = None,
) -> list[StepRecord]:
    """Run the plan; returns one record per step, sorted by step_id."""
    policy = policy or ExecutionPolicy()
    steps = {s.step_id: s for s in plan.steps}
    dependents: dict[int, list[int]] = {sid: [] for sid in steps}
    missing: dict[int, set[int]] = {}
    for step in plan.steps:
        missing[step.step_id] = set(step.depends_on)
        for dep in step.depends_on:
            dependents[dep].append(step.step_id)

    results: dict[int, dict] = {}
    records: dict[int, StepRecord] = {}
    lock = threading.Lock()

    def mark_skipped(root: int) -> list[StepRecord]:
        # breadth-first over dependents; caller holds the lock
        skipped = []
        queue = list(dependents[root])
        while queue:
            sid = queue.pop(0)
            if sid in records:
                continue
            now = policy.clock()
            records[sid] = StepRecord(
                step_id=sid,
                tool=steps[sid].tool,
                status=STATUS_SKIPPED,
                resolved_arguments=None,
                result=None,
                error=f"skipped: dependency {root} did not succeed",
                attempts=0,
                started=now,
                ended=now,
            )
            skipped.append(records[sid])
            queue.extend(dependents[sid])
        return skipped

    ready = sorted(sid for sid, deps in missing.items() if not deps)
    with ThreadPoolExecutor(max_workers=max(1, policy.max_parallel)) as pool:
        futures = {}
        for sid in ready:
            futures[pool.submit(_run_step, steps[sid], registry, results, policy)] = sid
        while futures:
            finished, _ = wait(futures, return_when=FIRST_COMPLETED)
            newly_ready: list[int] = []
            emitted: list[StepRecord] = []
            with lock:
                for fut in finished:
                    sid = futures.pop(fut)
                    record = fut.result()
                    records[sid] = record
                    emitted.append(record)
                    if record.status == STATUS_SUCCESS:
                        results[sid] = record.result
                        for child in dependents[sid]:
                            missing[child].discard(sid)
                            if not missing[child] and child not in records:
                                newly_ready.append(child)
                    else:
                        emitted.extend(mark_skipped(sid))
            for record in emitted if on_step else []:
                on_step(record)
            for sid in sorted(newly_ready):
                futures[pool.submit(_run_step, steps[sid], registry, results, policy)] = sid

    trace = [records[sid] for sid in sorted(records)]
    return trace
