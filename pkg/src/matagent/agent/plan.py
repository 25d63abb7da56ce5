"""Workflow planning: LLM-proposed step DAGs, validated before execution."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import MatagentError
from ..tools import ToolCall, ToolRegistry
from . import parsing, prompts
from .messages import ChatMessage, LlmParams

PLACEHOLDER_RE = re.compile(r"\$step(\d+)(?:\.([A-Za-z0-9_.]+))?")
DEFAULT_PLAN_RETRIES = 3


class PlanValidationError(MatagentError):
    """Plan structure violates an invariant."""


class CycleDetectedError(PlanValidationError):
    """Dependency graph contains a cycle."""


class PlanningFailedError(MatagentError):
    """Planner exhausted its retries; carries the last underlying error."""

    def __init__(self, last_error: Exception, attempts: int):
        super().__init__(
            f"planning failed after {attempts} attempt(s): {last_error}",
            hint="rephrase the query or check that the needed tools are registered",
        )
        self.last_error = last_error
        self.attempts = attempts


@dataclass(frozen=True)
class PlanStep:
    step_id: int
    tool: str
    argument_template: dict
    depends_on: tuple[int, ...] = ()
    rationale: str = ""

    def to_dict(self) -> dict:
        return {
            "step_id": self.step_id,
            "tool": self.tool,
            "arguments": self.argument_template,
            "depends_on": list(self.depends_on),
            "rationale": self.rationale,
        }


@dataclass(frozen=True)
class WorkflowPlan:
    steps: tuple[PlanStep, ...]
    direct_answer: str | None = None  # set when the planner answered without tools

    def to_dict(self) -> dict:
        return {"steps": [s.to_dict() for s in self.steps]}

    def __len__(self) -> int:
        return len(self.steps)


def _collect_placeholder_refs(value) -> set[int]:
    refs: set[int] = set()
    if isinstance(value, str):
        for match in PLACEHOLDER_RE.finditer(value):
            refs.add(int(match.group(1)))
    elif isinstance(value, dict):
        for v in value.values():
            refs |= _collect_placeholder_refs(v)
    elif isinstance(value, list):
        for v in value:
            refs |= _collect_placeholder_refs(v)
    return refs


def validate_plan(raw_steps: list, registry: ToolRegistry) -> WorkflowPlan:
    """Check ids, tool existence, dependency closure, and acyclicity."""
    steps: list[PlanStep] = []
    for i, raw in enumerate(raw_steps):
        if not isinstance(raw, dict):
            raise PlanValidationError(f"step {i} is not an object")
        try:
            step_id = int(raw["step_id"])
            tool = raw["tool"]
        except (KeyError, TypeError, ValueError) as exc:
            raise PlanValidationError(f"step {i} needs integer step_id and tool name: {exc}") from exc
        arguments = raw.get("arguments", {})
        if not isinstance(arguments, dict):
            raise PlanValidationError(f"step {step_id}: arguments must be an object")
        depends_on = raw.get("depends_on", [])
        if not isinstance(depends_on, list) or not all(isinstance(d, int) for d in depends_on):
            raise PlanValidationError(f"step {step_id}: depends_on must be a list of step ids")
        steps.append(
            PlanStep(
                step_id=step_id,
                tool=tool,
                argument_template=arguments,
                depends_on=tuple(depends_on),
                rationale=str(raw.get("rationale", "")),
            )
        )

    ids = [s.step_id for s in steps]
    if len(set(ids)) != len(ids):
        raise PlanValidationError(f"duplicate step_id in plan: {sorted(ids)}")
    known = set(ids)

    for step in steps:
        if step.tool not in registry:
            raise PlanValidationError(
                f"step {step.step_id} names unregistered tool {step.tool!r}"
            )
        for dep in step.depends_on:
            if dep not in known:
                raise PlanValidationError(
                    f"step {step.step_id} depends on unknown step {dep}"
                )
            if dep == step.step_id:
                raise CycleDetectedError(f"step {step.step_id} depends on itself")
        refs = _collect_placeholder_refs(step.argument_template)
        for ref in refs:
            if ref not in known:
                raise PlanValidationError(
                    f"step {step.step_id} references unknown step {ref} in its arguments"
                )
            if ref not in step.depends_on:
                raise PlanValidationError(
                    f"step {step.step_id} references step {ref} without declaring the dependency"
                )

    # Kahn's algorithm for cycle detection
    remaining = {s.step_id: set(s.depends_on) for s in steps}
    done: set[int] = set()
    while remaining:
        ready = [sid for sid, deps in remaining.items() if deps <= done]
        if not ready:
            raise CycleDetectedError(
                f"dependency cycle among steps {sorted(remaining)}"
            )
        for sid in ready:
            done.add(sid)
            del remaining[sid]

    return WorkflowPlan(steps=tuple(steps))


def plan(
    query: str,
    registry: ToolRegistry,
    backend,
    params: LlmParams,
    max_retries: int = DEFAULT_PLAN_RETRIES,
) -> WorkflowPlan:
    """Prompt for a plan; retry parse/validation failures with corrections.

    Total backend calls are bounded by ``max_retries + 1``.
    """
    if len(registry) == 0:
        raise PlanValidationError("cannot plan against an empty tool registry")
    messages = list(prompts.build_planner_messages(query, registry))
    last_error: Exception | None = None
    for attempt in range(max_retries + 1):
        result = backend.chat(messages, params)
        try:
            parsed = parsing.parse_tool_call(result.text, registry)
            if isinstance(parsed, parsing.PlanDirective):
                return validate_plan(parsed.steps, registry)
            if isinstance(parsed, ToolCall):
                # single-tool query: wrap into a one-step plan
                return WorkflowPlan(
                    steps=(
                        PlanStep(
                            step_id=1,
                            tool=parsed.tool,
                            argument_template=parsed.arguments,
                            depends_on=(),
                            rationale="single-tool query",
                        ),
                    )
                )
            return WorkflowPlan(steps=(), direct_answer=parsed.text)
        except MatagentError as exc:
            last_error = exc
            messages.append(ChatMessage("assistant", result.text))
            messages.append(ChatMessage("user", parsing.retry_message_for(exc)))
    raise PlanningFailedError(last_error, attempts=max_retries + 1)
