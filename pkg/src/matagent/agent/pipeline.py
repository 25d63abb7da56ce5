"""The agent pipeline: plan, execute, summarize.

With temperature 0 and the scripted backend the whole pipeline is a pure
function of (query, fixtures, policy): ``AgentResponse.to_json()`` is
byte-identical across runs when the policy provides a deterministic clock.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

from ..tools import ToolRegistry
from .executor import ExecutionPolicy, StepRecord, execute
from .messages import LlmParams
from .plan import WorkflowPlan, plan
from .summarize import lint_trace, summarize


@dataclass(frozen=True)
class AgentResponse:
    answer: str
    plan: WorkflowPlan
    trace: list[StepRecord]
    warnings: list[str]

    def to_dict(self) -> dict:
        return {
            "answer": self.answer,
            "plan": self.plan.to_dict(),
            "trace": [r.to_dict() for r in self.trace],
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def run_agent(
    query: str,
    registry: ToolRegistry,
    backend,
    params: LlmParams,
    policy: ExecutionPolicy | None = None,
    on_event: Callable[[str, dict], None] | None = None,
) -> AgentResponse:
    """Plan the query, execute the DAG, lint, and summarize.

    ``on_event(kind, payload)`` receives "plan" once and "step" per
    completed step record; the gateway uses it for streamed responses.
    """
    policy = policy or ExecutionPolicy()
    workflow = plan(query, registry, backend, params, max_retries=policy.max_retries)
    if on_event:
        on_event("plan", workflow.to_dict())

    if workflow.direct_answer is not None and not workflow.steps:
        return AgentResponse(
            answer=workflow.direct_answer, plan=workflow, trace=[], warnings=[]
        )

    on_step = (lambda record: on_event("step", record.to_dict())) if on_event else None
    trace = execute(workflow, registry, policy, on_step=on_step)
    warnings = lint_trace(trace)
    answer = summarize(
        query,
        trace,
        backend,
        params,
        warnings=warnings,
        token_budget=policy.context_budget,
    )
    return AgentResponse(answer=answer, plan=workflow, trace=trace, warnings=warnings)
