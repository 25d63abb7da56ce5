"""LLM backends: the chat-completions HTTP client and the scripted replayer.

Both speak the same small interface: ``chat`` for a whole completion and
``stream`` for token deltas with per-delta timestamps (real wall clock for
HTTP, synthetic for scripted fixtures, which keeps throughput tests exactly
checkable offline).
"""

from __future__ import annotations

import json
import re
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import requests

from ..errors import MatagentError
from .messages import ChatMessage, LlmParams, estimate_tokens, messages_hash

DEFAULT_TIMEOUT = 120.0
_TOKEN_RE = re.compile(r"\S+\s*|\s+")


class BackendTimeoutError(MatagentError):
    """Backend did not answer within the configured timeout."""


class ProtocolError(MatagentError):
    """Backend response does not follow the chat-completions contract."""


class UnknownFixtureError(MatagentError):
    """Scripted backend has no entry for this message sequence."""

    def __init__(self, digest: str, preview: str):
        super().__init__(
            f"no scripted response for message hash {digest}",
            hint=f"add a fixture entry for this exchange; conversation starts: {preview!r}",
        )
        self.digest = digest


@dataclass(frozen=True)
class ChatResult:
    text: str
    usage: dict
    latency: float


@dataclass(frozen=True)
class StreamDelta:
    text: str
    at: float  # seconds since the response stream opened


class ChatStream:
    """Iterates deltas and exposes totals once exhausted."""

    def __init__(self, deltas: Iterator[StreamDelta]):
        self._iter = deltas
        self.deltas: list[StreamDelta] = []
        self.exhausted = False

    def __iter__(self):
        for delta in self._iter:
            self.deltas.append(delta)
            yield delta
        self.exhausted = True

    def drain(self) -> "ChatStream":
        for _ in self:
            pass
        return self

    @property
    def text(self) -> str:
        return "".join(d.text for d in self.deltas)

    @property
    def completion_tokens(self) -> int:
        return len(self.deltas)

    @property
    def duration(self) -> float:
        """Generation time: stream open (t=0) to the last delta."""
        return self.deltas[-1].at if self.deltas else 0.0


def tokenize(text: str) -> list[str]:
    """Whitespace-preserving chunks whose concatenation is the input."""
    return _TOKEN_RE.findall(text)


class ScriptedBackend:
    """Replays fixture responses keyed by the canonical message hash.

    Fixture values may be a plain string, an object
    ``{"text": ..., "gen_seconds": ...}``, or a list of either (consumed in
    call order for keys that are hit repeatedly with different outcomes).
    Unknown keys raise, so every exchange a test exercises must be pinned.
    """

    def __init__(self, fixtures: dict | str | Path):
        if not isinstance(fixtures, dict):
            fixtures = json.loads(Path(fixtures).read_text())
        self._fixtures = fixtures
        self._cursors: dict[str, int] = {}
        self._lock = threading.Lock()

    def _entry(self, messages: list[ChatMessage]) -> dict:
        digest = messages_hash(messages)
        if digest not in self._fixtures:
            preview = messages[-1].content[:120] if messages else ""
            raise UnknownFixtureError(digest, preview)
        value = self._fixtures[digest]
        if isinstance(value, list):
            with self._lock:
                cursor = self._cursors.get(digest, 0)
                if cursor >= len(value):
                    raise UnknownFixtureError(digest, "fixture sequence exhausted")
                self._cursors[digest] = cursor + 1
            value = value[cursor]
        if isinstance(value, str):
            value = {"text": value}
        return value

    def chat(self, messages: list[ChatMessage], params: LlmParams) -> ChatResult:
        entry = self._entry(messages)
        text = entry["text"]
        prompt_tokens = sum(estimate_tokens(m.content) for m in messages)
        return ChatResult(
            text=text,
            usage={
                "prompt_tokens": prompt_tokens,
                "completion_tokens": len(tokenize(text)),
            },
            latency=float(entry.get("gen_seconds", 0.0)),
        )

    def stream(self, messages: list[ChatMessage], params: LlmParams) -> ChatStream:
        entry = self._entry(messages)
        tokens = tokenize(entry["text"])
        gen_seconds = float(entry.get("gen_seconds", 0.01 * len(tokens)))

        def deltas() -> Iterator[StreamDelta]:
            n = len(tokens)
            for i, tok in enumerate(tokens):
                yield StreamDelta(text=tok, at=(i + 1) * gen_seconds / n)

        return ChatStream(deltas())


class HttpBackend:
    """Client for the industry-standard chat-completions HTTP contract."""

    def __init__(
        self,
        base_url: str,
        api_key: str | None = None,
        timeout: float = DEFAULT_TIMEOUT,
        session: requests.Session | None = None,
    ):
        self.base_url = base_url.rstrip("/")
        self.api_key = api_key
        self.timeout = timeout
        self._session = session or requests.Session()

    def _headers(self) -> dict:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        return headers

    def _body(self, messages: list[ChatMessage], params: LlmParams, stream: bool) -> dict:
        body = {
            "model": params.model,
            "messages": [{"role": m.role, "content": m.content} for m in messages],
            "temperature": params.temperature,
            "max_tokens": params.max_tokens,
            "stream": stream,
        }
        if params.seed is not None:
            body["seed"] = params.seed
        return body

    def chat(self, messages: list[ChatMessage], params: LlmParams) -> ChatResult:
        started = time.perf_counter()
        try:
            resp = self._session.post(
                f"{self.base_url}/v1/chat/completions",
                json=self._body(messages, params, stream=False),
                headers=self._headers(),
                timeout=self.timeout,
            )
        except requests.Timeout as exc:
            raise BackendTimeoutError(f"chat request timed out after {self.timeout}s") from exc
        except requests.RequestException as exc:
            raise ProtocolError(f"transport failure: {exc}") from exc
        if resp.status_code != 200:
            raise ProtocolError(f"backend returned HTTP {resp.status_code}: {resp.text[:200]}")
        try:
            payload = resp.json()
            text = payload["choices"][0]["message"]["content"]
            usage = payload.get("usage", {})
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise ProtocolError(f"malformed chat-completions response: {exc}") from exc
        return ChatResult(text=text, usage=usage, latency=time.perf_counter() - started)

    def stream(self, messages: list[ChatMessage], params: LlmParams) -> ChatStream:
        try:
            resp = self._session.post(
                f"{self.base_url}/v1/chat/completions",
                json=self._body(messages, params, stream=True),
                headers=self._headers(),
                timeout=self.timeout,
                stream=True,
            )
        except requests.Timeout as exc:
            raise BackendTimeoutError(f"chat request timed out after {self.timeout}s") from exc
        except requests.RequestException as exc:
            raise ProtocolError(f"transport failure: {exc}") from exc
        if resp.status_code != 200:
            raise ProtocolError(f"backend returned HTTP {resp.status_code}: {resp.text[:200]}")

        opened = time.perf_counter()

        def deltas() -> Iterator[StreamDelta]:
            for raw in resp.iter_lines():
                if not raw:
                    continue
                line = raw.decode("utf-8") if isinstance(raw, bytes) else raw
                if not line.startswith("data:"):
                    continue
                data = line[len("data:") :].strip()
                if data == "[DONE]":
                    break
                try:
                    frame = json.loads(data)
                    piece = frame["choices"][0]["delta"].get("content", "")
                except (ValueError, KeyError, IndexError, TypeError) as exc:
                    raise ProtocolError(f"malformed stream frame: {data[:120]}") from exc
                if piece:
                    yield StreamDelta(text=piece, at=time.perf_counter() - opened)

        return ChatStream(deltas())
