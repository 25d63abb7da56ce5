// DOM builders for the transcript: plan lists, expandable step cards,
// streamed answers, warnings, and error banners. Values from gateway
// payloads are rendered verbatim (String / JSON.stringify), never recomputed.

import { renderPattern } from "./chart.js";
import type { ErrorEnvelope, Plan, StepRecord } from "./types.js";
import { isDiffractionPattern } from "./types.js";

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderPlan(plan: Plan): HTMLElement {
  const box = el("div", "plan-box");
  box.appendChild(el("div", "plan-title", `plan: ${plan.steps.length} step(s)`));
  const list = document.createElement("ol");
  list.className = "plan-steps";
  for (const step of plan.steps) {
    const item = document.createElement("li");
    item.value = step.step_id;
    item.textContent = step.rationale ? `${step.tool} - ${step.rationale}` : step.tool;
    list.appendChild(item);
  }
  box.appendChild(list);
  return box;
}

export function renderStepCard(step: StepRecord): HTMLElement {
  const card = document.createElement("details");
  card.className = `step-card status-${step.status}`;

  const summary = document.createElement("summary");
  summary.appendChild(el("span", "step-id", `step ${step.step_id}`));
  summary.appendChild(el("span", "step-tool", step.tool));
  summary.appendChild(el("span", `badge badge-${step.status}`, step.status));
  card.appendChild(summary);

  if (step.resolved_arguments !== null) {
    card.appendChild(el("div", "section-label", "arguments"));
    card.appendChild(el("pre", "step-args", JSON.stringify(step.resolved_arguments, null, 2)));
  }
  if (step.error) {
    card.appendChild(el("div", "step-error", step.error));
  }
  if (step.result !== null) {
    card.appendChild(el("div", "section-label", "result"));
    if (isDiffractionPattern(step.result)) {
      card.appendChild(renderPattern(step.result));
    }
    card.appendChild(el("pre", "step-result", JSON.stringify(step.result, null, 2)));
  }
  return card;
}

export function renderWarnings(warnings: string[]): HTMLElement {
  const box = el("div", "warnings-box");
  if (warnings.length === 0) return box;
  box.appendChild(el("div", "warnings-title", "warnings"));
  const list = document.createElement("ul");
  list.className = "warnings";
  for (const warning of warnings) {
    const item = document.createElement("li");
    item.textContent = warning;
    list.appendChild(item);
  }
  box.appendChild(list);
  return box;
}

export function renderErrorBanner(error: ErrorEnvelope, retryAfter: number | null = null): HTMLElement {
  const banner = el("div", "error-banner");
  banner.appendChild(el("span", "error-code", error.code));
  banner.appendChild(el("span", "error-message", error.message));
  if (error.hint) banner.appendChild(el("span", "error-hint", error.hint));
  if (retryAfter !== null) {
    const wrap = el("span", "retry-wrap", "retry in ");
    const countdown = el("span", "retry-countdown", String(retryAfter));
    countdown.dataset.retryAfter = String(retryAfter);
    wrap.appendChild(countdown);
    wrap.appendChild(document.createTextNode("s"));
    banner.appendChild(wrap);
  }
  return banner;
}

/** Ticks the 429 countdown once per second; returns a stop function. */
export function startCountdown(banner: HTMLElement, onDone?: () => void): () => void {
  const countdown = banner.querySelector<HTMLElement>(".retry-countdown");
  if (!countdown) return () => undefined;
  let remaining = Number(countdown.dataset.retryAfter ?? "0");
  const timer = setInterval(() => {
    remaining -= 1;
    if (remaining <= 0) {
      clearInterval(timer);
      banner.classList.add("retry-ready");
      countdown.textContent = "0";
      onDone?.();
    } else {
      countdown.textContent = String(remaining);
    }
  }, 1000);
  return () => clearInterval(timer);
}

export function renderToolSidebar(openapi: Record<string, unknown>): HTMLElement {
  const box = el("div", "sidebar-tools");
  box.appendChild(el("div", "sidebar-title", "endpoints"));
  const list = document.createElement("ul");
  const paths = (openapi.paths ?? {}) as Record<string, Record<string, { summary?: string }>>;
  for (const [path, methods] of Object.entries(paths)) {
    for (const [method, op] of Object.entries(methods)) {
      const item = document.createElement("li");
      item.textContent = `${method.toUpperCase()} ${path}`;
      if (op.summary) item.title = op.summary;
      list.appendChild(item);
    }
  }
  box.appendChild(list);
  return box;
}
