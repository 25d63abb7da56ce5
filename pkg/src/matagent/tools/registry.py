"""Tool registry: schema-carrying descriptors and validated invocation.

Descriptors hold JSON-Schema parameter/result contracts; ``invoke``
validates arguments before dispatch and results after, so a tool can never
silently accept or emit malformed payloads. The registry is immutable once
startup registration is done and invocation is side-effect free, so
concurrent calls are safe.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Callable

from jsonschema import Draft202012Validator

from ..errors import MatagentError

_NAME_RE = re.compile(r"^[a-z][a-z0-9_]*$")


class DuplicateNameError(MatagentError):
    """Tool name already registered."""


class UnknownToolError(MatagentError):
    """No tool with the requested name."""

    def __init__(self, name: str, suggestions: list[str] | None = None):
        hint = ""
        if suggestions:
            hint = "did you mean: " + ", ".join(suggestions)
        super().__init__(f"unknown tool {name!r}", hint=hint)
        self.name = name
        self.suggestions = suggestions or []


class SchemaViolationError(MatagentError):
    """Arguments or result failed JSON-schema validation."""

    def __init__(self, subject: str, violations: list[str]):
        super().__init__(
            f"{subject} failed schema validation: " + "; ".join(violations),
            hint="fix the listed properties and retry",
        )
        self.violations = violations


class HandlerFailureError(MatagentError):
    """Tool handler raised; the original error rides along as ``cause``."""

    def __init__(self, tool: str, cause: Exception):
        code = getattr(cause, "code", type(cause).__name__)
        super().__init__(f"tool {tool!r} failed [{code}]: {cause}")
        self.tool = tool
        self.cause = cause


class NotEnabledError(MatagentError):
    """Placeholder tool that is registered but intentionally disabled."""


@dataclass(frozen=True)
class ToolDescriptor:
    name: str
    description: str
    param_schema: dict
    result_schema: dict

    def __post_init__(self):
        if not _NAME_RE.match(self.name):
            raise ValueError(f"tool name {self.name!r} must match {_NAME_RE.pattern}")
        for label, schema in (("param", self.param_schema), ("result", self.result_schema)):
            Draft202012Validator.check_schema(schema)
            _check_required_known(schema, f"{self.name} {label}_schema")


def _check_required_known(schema: dict, where: str) -> None:
    if not isinstance(schema, dict):
        return
    props = schema.get("properties", {})
    for req in schema.get("required", []):
        if req not in props:
            raise ValueError(f"{where}: required property {req!r} missing from properties")
    for sub in props.values():
        _check_required_known(sub, where)
    if "items" in schema:
        _check_required_known(schema["items"], where)


@dataclass(frozen=True)
class ToolCall:
    tool: str
    arguments: dict
    call_id: str


def _validate(schema: dict, payload: Any, subject: str) -> None:
    validator = Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(payload), key=lambda e: list(e.absolute_path))
    if errors:
        violations = []
        for err in errors:
            path = ".".join(str(p) for p in err.absolute_path) or "<root>"
            message = err.message
            if err.context:
                # anyOf/oneOf: surface the branch messages, which name fields
                branches = sorted({sub.message for sub in err.context})
                message = f"{message} ({'; '.join(branches)})"
            violations.append(f"{path}: {message}")
        raise SchemaViolationError(subject, violations)


def levenshtein(a: str, b: str) -> int:
    """Plain edit distance; used for near-miss tool-name suggestions."""
    if a == b:
        return 0
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


@dataclass
class ToolRegistry:
    _tools: dict[str, tuple[ToolDescriptor, Callable[[dict], dict]]] = field(default_factory=dict)

    def register(self, descriptor: ToolDescriptor, handler: Callable[[dict], dict]) -> None:
        if descriptor.name in self._tools:
            raise DuplicateNameError(f"tool {descriptor.name!r} is already registered")
        self._tools[descriptor.name] = (descriptor, handler)

    def names(self) -> list[str]:
        return list(self._tools)

    def __contains__(self, name: str) -> bool:
        return name in self._tools

    def __len__(self) -> int:
        return len(self._tools)

    def descriptor(self, name: str) -> ToolDescriptor:
        try:
            return self._tools[name][0]
        except KeyError:
            raise UnknownToolError(name, self.nearest_names(name)) from None

    def descriptors(self) -> list[ToolDescriptor]:
        return [d for d, _ in self._tools.values()]

    def nearest_names(self, name: str, k: int = 3) -> list[str]:
        ranked = sorted(self._tools, key=lambda t: (levenshtein(name, t), t))
        return ranked[:k]

    def validate_arguments(self, tool: str, arguments: dict) -> None:
        descriptor = self.descriptor(tool)
        _validate(descriptor.param_schema, arguments, f"arguments for {tool!r}")

    def invoke(self, call: ToolCall) -> dict:
        if call.tool not in self._tools:
            raise UnknownToolError(call.tool, self.nearest_names(call.tool))
        descriptor, handler = self._tools[call.tool]
        _validate(descriptor.param_schema, call.arguments, f"arguments for {call.tool!r}")
        try:
            result = handler(call.arguments)
        except MatagentError as exc:
            raise HandlerFailureError(call.tool, exc) from exc
        except Exception as exc:  # noqa: BLE001 - deliberate boundary
            raise HandlerFailureError(call.tool, exc) from exc
        _validate(descriptor.result_schema, result, f"result of {call.tool!r}")
        return result

    def render_prompt_block(self) -> str:
        """Tool metadata block injected into LLM prompts, registration order."""
        lines = []
        for idx, (descriptor, _) in enumerate(self._tools.values(), start=1):
            props = descriptor.param_schema.get("properties", {})
            required = set(descriptor.param_schema.get("required", []))
            params = []
            for pname, pschema in props.items():
                ptype = pschema.get("type", "any")
                mark = "" if pname in required else "?"
                desc = pschema.get("description", "")
                params.append(f"    - {pname}{mark} ({ptype}): {desc}")
            lines.append(f"{idx}. {descriptor.name}: {descriptor.description}")
            if params:
                lines.append("  parameters:")
                lines.extend(params)
            else:
                lines.append("  parameters: none")
        return "\n".join(lines)
