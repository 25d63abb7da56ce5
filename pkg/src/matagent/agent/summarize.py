"""Trace summarization: consistency lint, digesting, and context pruning."""

from __future__ import annotations

import json

from .executor import STATUS_SUCCESS, StepRecord
from .messages import ChatMessage, LlmParams, estimate_tokens
from .prompts import build_summary_messages

FORMATION_ENERGY_CEILING = 5.0  # eV/atom; values above are flagged
BUDGET_TOO_SMALL = "BudgetTooSmall"
_MAX_STRING = 400
_MAX_LIST = 8


def lint_trace(trace: list[StepRecord]) -> list[str]:
    """Physical-consistency flags: negative gaps, huge formation energies,
    and relaxations that did not converge."""
    warnings: list[str] = []
    for record in trace:
        if record.status != STATUS_SUCCESS or record.result is None:
            continue
        _lint_value(record, record.result, warnings)
    return warnings


def _lint_value(record: StepRecord, value, warnings: list[str]) -> None:
    if isinstance(value, dict):
        for key, sub in value.items():
            if key.startswith("bandgap") and isinstance(sub, (int, float)) and sub < 0:
                warnings.append(
                    f"step {record.step_id} ({record.tool}): negative bandgap {sub} eV"
                )
            elif (
                key == "formation_energy"
                and isinstance(sub, (int, float))
                and sub > FORMATION_ENERGY_CEILING
            ):
                warnings.append(
                    f"step {record.step_id} ({record.tool}): formation energy "
                    f"{sub} eV/atom above +{FORMATION_ENERGY_CEILING}"
                )
            elif key == "converged" and sub is False:
                warnings.append(
                    f"step {record.step_id} ({record.tool}): relaxation did not converge"
                )
            else:
                _lint_value(record, sub, warnings)
    elif isinstance(value, list):
        for sub in value:
            _lint_value(record, sub, warnings)


def _digest_value(value):
    if isinstance(value, str):
        if len(value) > _MAX_STRING:
            return value[: _MAX_STRING // 2] + f"...[{len(value)} chars]"
        return value
    if isinstance(value, list):
        if len(value) > _MAX_LIST:
            return [_digest_value(v) for v in value[:3]] + [f"...[{len(value)} values]"]
        return [_digest_value(v) for v in value]
    if isinstance(value, dict):
        return {k: _digest_value(v) for k, v in value.items()}
    return value


def compact_trace(trace: list[StepRecord]) -> str:
    """One JSON line per step with long payloads elided; prompt-friendly."""
    lines = []
    for record in trace:
        entry = {
            "step": record.step_id,
            "tool": record.tool,
            "status": record.status,
        }
        if record.result is not None:
            entry["result"] = _digest_value(record.result)
        if record.error:
            entry["error"] = record.error
        lines.append(json.dumps(entry, sort_keys=True, ensure_ascii=False))
    return "\n".join(lines)


def prune_context(
    history: list[ChatMessage],
    token_budget: int,
    protected_call_ids: set[str] | None = None,
) -> tuple[list[ChatMessage], list[str]]:
    """Trim a conversation to a token budget (4 chars/token estimate).

    Kept in priority order: the system prompt, the last user message, tool
    results whose call_ids are still needed by unresolved plan steps, then
    the rest most-recent-first. Pruned tool results become one-line stubs;
    the system prompt is never dropped.
    """
    protected_call_ids = protected_call_ids or set()
    if not history:
        return [], []

    costs = [estimate_tokens(m.content) for m in history]
    system_idx = 0 if history[0].role == "system" else None
    last_user_idx = None
    for i in range(len(history) - 1, -1, -1):
        if history[i].role == "user":
            last_user_idx = i
            break

    keep: set[int] = set()
    floor_cost = 0
    for idx in (system_idx, last_user_idx):
        if idx is not None:
            keep.add(idx)
            floor_cost += costs[idx]

    warnings: list[str] = []
    if floor_cost > token_budget:
        warnings.append(
            f"{BUDGET_TOO_SMALL}: system prompt and last user message need "
            f"{floor_cost} tokens, budget is {token_budget}"
        )
        pruned = [history[i] for i in sorted(keep)]
        return pruned, warnings

    remaining = token_budget - floor_cost

    def protected(i: int) -> bool:
        msg = history[i]
        return (
            msg.role == "tool"
            and msg.tool_result is not None
            and msg.tool_result.get("call_id") in protected_call_ids
        )

    candidates = [i for i in range(len(history)) if i not in keep]
    ordered = [i for i in reversed(candidates) if protected(i)] + [
        i for i in reversed(candidates) if not protected(i)
    ]
    for i in ordered:
        if costs[i] <= remaining:
            keep.add(i)
            remaining -= costs[i]

    pruned: list[ChatMessage] = []
    for i, msg in enumerate(history):
        if i in keep:
            pruned.append(msg)
        elif msg.role == "tool":
            tool_name = (msg.tool_result or {}).get("tool", "tool")
            pruned.append(
                ChatMessage(
                    "tool",
                    f"[result of {tool_name} elided]",
                    tool_result={"call_id": (msg.tool_result or {}).get("call_id", "?")},
                )
            )
        # other unkept messages are dropped outright
    return pruned, warnings


def summary_messages_for(
    query: str,
    trace: list[StepRecord],
    warnings: list[str],
    token_budget: int | None = None,
) -> list[ChatMessage]:
    """The exact message list summarize() sends; fixture builders reuse it."""
    digest = compact_trace(trace) if trace else "(no tool steps were needed)"
    messages = build_summary_messages(query, digest, warnings)
    if token_budget is not None:
        messages, _ = prune_context(messages, token_budget)
    return messages


def summarize(
    query: str,
    trace: list[StepRecord],
    backend,
    params: LlmParams,
    warnings: list[str] | None = None,
    token_budget: int | None = None,
) -> str:
    """Prompt the backend with the compacted trace; returns the answer text."""
    warnings = warnings if warnings is not None else lint_trace(trace)
    messages = summary_messages_for(query, trace, warnings, token_budget)
    return backend.chat(messages, params).text
