"""Agent pipeline: LLM backends, planning, DAG execution, summarization."""

from .backends import (
    BackendTimeoutError,
    ChatResult,
    ChatStream,
    HttpBackend,
    ProtocolError,
    ScriptedBackend,
    StreamDelta,
    UnknownFixtureError,
    tokenize,
)
from .executor import (
    STATUS_FAILED,
    STATUS_SKIPPED,
    STATUS_SUCCESS,
    ExecutionPolicy,
    ResolutionError,
    StepRecord,
    StepTimeoutError,
    execute,
    resolve_template,
)
from .messages import (
    ChatMessage,
    LlmParams,
    MessageError,
    canonical_messages_json,
    estimate_tokens,
    messages_hash,
    validate_conversation,
)
from .parsing import FinalAnswer, NotJsonError, PlanDirective, parse_tool_call, retry_message_for
from .pipeline import AgentResponse, run_agent
from .plan import (
    CycleDetectedError,
    PlanningFailedError,
    PlanStep,
    PlanValidationError,
    WorkflowPlan,
    plan,
    validate_plan,
)
from .summarize import compact_trace, lint_trace, prune_context, summarize

__all__ = [
    "STATUS_FAILED",
    "STATUS_SKIPPED",
    "STATUS_SUCCESS",
    "AgentResponse",
    "BackendTimeoutError",
    "ChatMessage",
    "ChatResult",
    "ChatStream",
    "CycleDetectedError",
    "ExecutionPolicy",
    "FinalAnswer",
    "HttpBackend",
    "LlmParams",
    "MessageError",
    "NotJsonError",
    "PlanDirective",
    "PlanStep",
    "PlanValidationError",
    "PlanningFailedError",
    "ProtocolError",
    "ResolutionError",
    "ScriptedBackend",
    "StepRecord",
    "StepTimeoutError",
    "StreamDelta",
    "UnknownFixtureError",
    "WorkflowPlan",
    "canonical_messages_json",
    "compact_trace",
    "estimate_tokens",
    "execute",
    "lint_trace",
    "messages_hash",
    "parse_tool_call",
    "plan",
    "prune_context",
    "resolve_template",
    "retry_message_for",
    "run_agent",
    "summarize",
    "tokenize",
    "validate_conversation",
]
