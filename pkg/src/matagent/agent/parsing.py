"""Constrained parsing of LLM output into tool calls, plans, or answers.

The first JSON object found in the text (fenced or raw) is classified by
its keys. Every parse failure carries a corrective ``retry_message`` that
the planner appends to the conversation before asking again.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from ..errors import MatagentError
from ..tools import SchemaViolationError, ToolCall, ToolRegistry, UnknownToolError
from . import prompts


class NotJsonError(MatagentError):
    """No usable JSON object in the model output."""

    retry_message = prompts.RETRY_NOT_JSON


@dataclass(frozen=True)
class PlanDirective:
    steps: list


@dataclass(frozen=True)
class FinalAnswer:
    text: str


def _first_json_object(text: str):
    decoder = json.JSONDecoder()
    idx = text.find("{")
    while idx != -1:
        try:
            obj, _ = decoder.raw_decode(text[idx:])
        except ValueError:
            idx = text.find("{", idx + 1)
            continue
        if isinstance(obj, dict):
            return obj
        idx = text.find("{", idx + 1)
    return None


def _call_id(tool: str, arguments: dict) -> str:
    blob = json.dumps({"tool": tool, "arguments": arguments}, sort_keys=True, separators=(",", ":"))
    return "call-" + hashlib.sha256(blob.encode("utf-8")).hexdigest()[:10]


def retry_message_for(error: Exception) -> str:
    """Corrective text appended to the conversation after a parse failure."""
    if isinstance(error, NotJsonError):
        return error.retry_message
    if isinstance(error, UnknownToolError):
        nearest = ", ".join(error.suggestions) or "none registered"
        return (
            f"The tool {error.name!r} does not exist. Closest registered names: {nearest}. "
            "Emit a single JSON object using one of the registered tools."
        )
    if isinstance(error, SchemaViolationError):
        return (
            "Your tool arguments were rejected: "
            + "; ".join(error.violations)
            + ". Fix these properties and emit the JSON object again."
        )
    return f"Your reply could not be used ({error}). Emit a single valid JSON object."


def parse_tool_call(text: str, registry: ToolRegistry) -> ToolCall | PlanDirective | FinalAnswer:
    """Classify model output; validates tool existence and argument schemas."""
    obj = _first_json_object(text)
    if obj is None:
        raise NotJsonError("model output holds no parsable JSON object")

    if "steps" in obj:
        if not isinstance(obj["steps"], list):
            raise NotJsonError('"steps" must be an array of plan steps')
        return PlanDirective(steps=obj["steps"])

    if "final_answer" in obj:
        return FinalAnswer(text=str(obj["final_answer"]))

    if "tool" in obj:
        tool = obj["tool"]
        arguments = obj.get("arguments", {})
        if not isinstance(arguments, dict):
            raise NotJsonError('"arguments" must be a JSON object')
        if tool not in registry:
            raise UnknownToolError(tool, registry.nearest_names(tool))
        registry.validate_arguments(tool, arguments)
        return ToolCall(tool=tool, arguments=arguments, call_id=_call_id(tool, arguments))

    raise NotJsonError(
        'JSON object must contain "steps", "tool", or "final_answer"'
    )
