"""Chat message and sampling-parameter types plus canonical hashing.

The canonical hash of a message sequence keys the scripted backend's
fixture map: any change to prompts or conversation shape changes the hash,
which forces fixtures (and therefore tests) to pin every exchange.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from ..errors import MatagentError
from ..tools import ToolCall

ROLES = ("system", "user", "assistant", "tool")


class MessageError(MatagentError):
    """Message violates a conversation invariant."""


@dataclass(frozen=True)
class ChatMessage:
    role: str
    content: str
    tool_call: ToolCall | None = None
    tool_result: dict | None = None  # {"call_id": ..., "result": ...}

    def __post_init__(self):
        if self.role not in ROLES:
            raise MessageError(f"role must be one of {ROLES}, got {self.role!r}")
        if self.role == "tool" and (self.tool_result is None or "call_id" not in self.tool_result):
            raise MessageError("tool messages must carry a tool_result with a call_id")

    def to_dict(self) -> dict:
        out: dict = {"role": self.role, "content": self.content}
        if self.tool_call is not None:
            out["tool_call"] = {
                "tool": self.tool_call.tool,
                "arguments": self.tool_call.arguments,
                "call_id": self.tool_call.call_id,
            }
        if self.tool_result is not None:
            out["tool_result"] = self.tool_result
        return out


def validate_conversation(messages: list[ChatMessage]) -> None:
    """Tool messages must answer a tool_call issued earlier in the sequence."""
    seen_call_ids = set()
    for msg in messages:
        if msg.tool_call is not None:
            seen_call_ids.add(msg.tool_call.call_id)
        if msg.role == "tool":
            call_id = msg.tool_result["call_id"]
            if call_id not in seen_call_ids:
                raise MessageError(
                    f"tool message answers unknown call_id {call_id!r}"
                )


def canonical_messages_json(messages: list[ChatMessage]) -> str:
    return json.dumps(
        [m.to_dict() for m in messages],
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=False,
    )


def messages_hash(messages: list[ChatMessage]) -> str:
    """SHA-256 hex of the canonicalized message array."""
    return hashlib.sha256(canonical_messages_json(messages).encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class LlmParams:
    model: str
    temperature: float = 0.0
    max_tokens: int = 2048
    seed: int | None = None

    def __post_init__(self):
        if self.temperature < 0:
            raise MessageError(f"temperature must be >= 0, got {self.temperature}")


def estimate_tokens(text: str) -> int:
    """Budget arithmetic at 4 characters per token."""
    return -(-len(text) // 4)
