import { afterEach, describe, expect, it, vi } from "vitest";

import { renderErrorBanner, renderPlan, renderStepCard, renderToolSidebar, renderWarnings, startCountdown } from "../src/render.js";
import type { AgentFrame, AgentResponse, Plan, StepRecord } from "../src/types.js";
import defect from "./fixtures/defect_transcript.json";
import pxrd from "./fixtures/pxrd_transcript.json";
import openapi from "./fixtures/openapi.json";
import rateLimited from "./fixtures/rate_limited.json";

const defectFrames = defect.frames as AgentFrame[];

function framesOf(transcript: { frames: unknown[] }) {
  const frames = transcript.frames as AgentFrame[];
  const plan = (frames.find((f) => f.type === "plan") as { plan: Plan }).plan;
  const steps = frames.filter((f) => f.type === "step").map((f) => (f as { step: StepRecord }).step);
  const final = (frames.find((f) => f.type === "final") as { response: AgentResponse }).response;
  return { plan, steps, final };
}

const NUMBER_RE = /-?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?/g;

/** Every number token present anywhere in the gateway payload (values and
 * strings), rendered the way JavaScript renders it. */
function allowedNumbers(payload: unknown): Set<string> {
  const allowed = new Set<string>();
  const walk = (value: unknown): void => {
    if (typeof value === "number") {
      allowed.add(String(value));
    } else if (typeof value === "string") {
      for (const match of value.match(NUMBER_RE) ?? []) {
        allowed.add(match);
        allowed.add(String(Number(match)));
      }
    } else if (Array.isArray(value)) {
      value.forEach(walk);
    } else if (typeof value === "object" && value !== null) {
      Object.values(value).forEach(walk);
    }
  };
  walk(payload);
  return allowed;
}

function displayedNumbers(root: HTMLElement): string[] {
  // per text node: adjacent nodes render separately, so their digits must
  // not be concatenated into artificial tokens
  const out: string[] = [];
  const walker = root.ownerDocument.createTreeWalker(root, 4 /* NodeFilter.SHOW_TEXT */);
  for (let node = walker.nextNode(); node; node = walker.nextNode()) {
    out.push(...((node.textContent ?? "").match(NUMBER_RE) ?? []));
  }
  return out;
}

describe("plan and step rendering", () => {
  it("renders one numbered entry per plan step", () => {
    const { plan } = framesOf(defect);
    const box = renderPlan(plan);
    expect(box.querySelectorAll("li").length).toBe(10);
    expect(box.textContent).toContain("jarvis_dft_query");
  });

  it("step card count equals plan length for the recorded run", () => {
    const { plan, steps } = framesOf(defect);
    const host = document.createElement("div");
    for (const step of steps) host.appendChild(renderStepCard(step));
    expect(host.querySelectorAll(".step-card").length).toBe(plan.steps.length);
  });

  it("badges reflect the gateway trace statuses exactly", () => {
    const { steps, final } = framesOf(defect);
    const host = document.createElement("div");
    for (const step of steps) host.appendChild(renderStepCard(step));
    const badges = [...host.querySelectorAll(".badge")].map((b) => b.textContent);
    expect(badges).toEqual(final.trace.map((r) => r.status));
    expect(badges).toEqual(Array(10).fill("success"));
  });

  it("renders the skipped-failed badge for degraded steps", () => {
    const skipped: StepRecord = {
      step_id: 2,
      tool: "simulate_pxrd",
      status: "skipped-failed",
      resolved_arguments: null,
      result: null,
      error: "skipped: dependency 1 did not succeed",
      attempts: 0,
      started: 0,
      ended: 0,
    };
    const card = renderStepCard(skipped);
    expect(card.querySelector(".badge-skipped-failed")).not.toBeNull();
    expect(card.textContent).toContain("skipped: dependency 1 did not succeed");
  });

  it("shows tool name, arguments, and result JSON in each card", () => {
    const { steps } = framesOf(defect);
    const card = renderStepCard(steps[0]);
    expect(card.textContent).toContain("jarvis_dft_query");
    expect(card.querySelector(".step-args")?.textContent).toContain('"Ga"');
    expect(card.querySelector(".step-result")?.textContent).toContain("JVASP-30");
  });

  it("embeds a chart when a step result is a diffraction pattern", () => {
    const { steps } = framesOf(pxrd);
    const cards = steps.map(renderStepCard);
    const withChart = cards.filter((c) => c.querySelector(".pattern-chart svg"));
    expect(withChart.length).toBe(1); // exactly the simulate_pxrd step
  });
});

describe("numbers shown are traceable to gateway responses", () => {
  it("defect run: every rendered number exists in the transcript payload", () => {
    const { plan, steps, final } = framesOf(defect);
    const allowed = allowedNumbers(defect);
    const host = document.createElement("div");
    host.appendChild(renderPlan(plan));
    for (const step of steps) host.appendChild(renderStepCard(step));
    host.appendChild(renderWarnings(final.warnings));
    const answer = document.createElement("div");
    answer.textContent = final.answer;
    host.appendChild(answer);

    const unknown = displayedNumbers(host).filter((n) => !allowed.has(n));
    expect(unknown).toEqual([]);
  });

  it("pxrd run including the chart: no number is invented", () => {
    const { plan, steps, final } = framesOf(pxrd);
    const allowed = allowedNumbers(pxrd);
    const host = document.createElement("div");
    host.appendChild(renderPlan(plan));
    for (const step of steps) host.appendChild(renderStepCard(step));
    host.appendChild(renderWarnings(final.warnings));
    const unknown = displayedNumbers(host).filter((n) => !allowed.has(n));
    expect(unknown).toEqual([]);
  });
});

describe("error rendering", () => {
  afterEach(() => {
    vi.useRealTimers();
  });

  it("renders the 429 envelope with a countdown from Retry-After", () => {
    const banner = renderErrorBanner(rateLimited.body, Number(rateLimited.retry_after));
    expect(banner.textContent).toContain("rate_limited");
    const countdown = banner.querySelector(".retry-countdown");
    expect(countdown?.textContent).toBe(String(Number(rateLimited.retry_after)));
  });

  it("counts the 429 banner down to ready", () => {
    vi.useFakeTimers();
    const banner = renderErrorBanner(rateLimited.body, 3);
    const done = vi.fn();
    startCountdown(banner, done);
    vi.advanceTimersByTime(1000);
    expect(banner.querySelector(".retry-countdown")?.textContent).toBe("2");
    vi.advanceTimersByTime(2000);
    expect(banner.classList.contains("retry-ready")).toBe(true);
    expect(done).toHaveBeenCalledOnce();
  });

  it("renders hint text when present", () => {
    const banner = renderErrorBanner({ code: "auth", message: "missing API key", hint: "send a bearer key" });
    expect(banner.textContent).toContain("send a bearer key");
  });
});

describe("tool sidebar", () => {
  it("lists every documented endpoint from openapi.json", () => {
    const box = renderToolSidebar(openapi as Record<string, unknown>);
    const text = box.textContent ?? "";
    for (const path of Object.keys((openapi as { paths: Record<string, unknown> }).paths)) {
      expect(text).toContain(path);
    }
  });
});
