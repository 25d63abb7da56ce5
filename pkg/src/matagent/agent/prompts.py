"""Prompt construction: system role, tool block injection, few-shot examples.

These strings are part of the deterministic surface: scripted-backend
fixtures are keyed by hashes of the exact rendered messages, so editing
anything here invalidates recorded fixtures on purpose.
"""

from __future__ import annotations

from ..tools import ToolRegistry
from .messages import ChatMessage

PLANNER_ROLE = """\
You are a materials-science research assistant that reasons step by step and acts only through the registered tools.
Work in the Thought -> Action -> Observation style: think about what is needed, then act by emitting exactly ONE JSON object and nothing else after it.

Your JSON object must be one of:
1. a workflow plan: {"steps": [{"step_id": 1, "tool": "<name>", "arguments": {...}, "depends_on": [], "rationale": "<why>"}, ...]}
2. a single tool call: {"tool": "<name>", "arguments": {...}}
3. a direct answer when no tool is needed: {"final_answer": "<text>"}

Plan rules:
- step_id values are positive integers, unique, in execution order.
- depends_on lists the step_ids whose outputs a step consumes.
- reference an earlier result field with "$step<id>.<path>", e.g. "$step2.poscar"; every referenced step must be listed in depends_on.
- use only registered tool names and schema-valid arguments.
- prefer bandgap_mbj over bandgap_opt when both are present; TBmBJ gaps are the trusted numbers.
- keep plans at or under 12 steps; validate inputs are physical before using them.
"""

FEWSHOT_SINGLE = """\
Example (single tool):
Query: What is the formation energy of rocksalt NaCl in the database?
Answer:
{"steps": [{"step_id": 1, "tool": "jarvis_dft_query", "arguments": {"formula": "NaCl"}, "depends_on": [], "rationale": "look up the NaCl record"}]}
"""

FEWSHOT_CHAIN = """\
Example (three dependent steps):
Query: Simulate the powder XRD pattern of the most stable MgO polymorph.
Answer:
{"steps": [
  {"step_id": 1, "tool": "jarvis_dft_query", "arguments": {"formula": "MgO"}, "depends_on": [], "rationale": "find MgO records"},
  {"step_id": 2, "tool": "get_structure", "arguments": {"jid": "$step1.records.0.jid"}, "depends_on": [1], "rationale": "fetch the structure"},
  {"step_id": 3, "tool": "simulate_pxrd", "arguments": {"poscar": "$step2.poscar"}, "depends_on": [2], "rationale": "simulate the pattern"}
]}
"""

SUMMARIZER_ROLE = """\
You are a materials-science research assistant summarizing the outcome of an executed tool workflow.
Ground every number in the trace below; do not invent values. Prefer bandgap_mbj over bandgap_opt when both are present.
State clearly when a step failed or was skipped, and carry any listed warnings into the summary.
Answer in clear prose for a working scientist.
"""


def planner_system_prompt(registry: ToolRegistry) -> str:
    return (
        PLANNER_ROLE
        + "\nRegistered tools:\n"
        + registry.render_prompt_block()
        + "\n\n"
        + FEWSHOT_SINGLE
        + "\n"
        + FEWSHOT_CHAIN
    )


def build_planner_messages(query: str, registry: ToolRegistry) -> list[ChatMessage]:
    return [
        ChatMessage("system", planner_system_prompt(registry)),
        ChatMessage("user", f"Query: {query}\nRespond with a single JSON object."),
    ]


def build_summary_messages(query: str, trace_digest: str, warnings: list[str]) -> list[ChatMessage]:
    warn_block = ""
    if warnings:
        warn_block = "\nWarnings:\n" + "\n".join(f"- {w}" for w in warnings)
    return [
        ChatMessage("system", SUMMARIZER_ROLE),
        ChatMessage(
            "user",
            f"Query: {query}\n\nExecuted workflow trace:\n{trace_digest}{warn_block}\n\n"
            "Write the final answer.",
        ),
    ]


RETRY_NOT_JSON = (
    "Your reply did not contain a parsable JSON object. Respond with a single JSON "
    'object only: {"steps": [...]}, {"tool": ..., "arguments": {...}}, or '
    '{"final_answer": "..."}.'
)
