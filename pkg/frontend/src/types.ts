// Wire types mirroring the gateway's JSON contracts. The UI never computes
// science: every number it shows comes out of one of these payloads.

export interface PlanStep {
  step_id: number;
  tool: string;
  arguments: Record<string, unknown>;
  depends_on: number[];
  rationale: string;
}

export interface Plan {
  steps: PlanStep[];
}

export type StepStatus = "success" | "failed" | "skipped-failed";

export interface StepRecord {
  step_id: number;
  tool: string;
  status: StepStatus;
  resolved_arguments: Record<string, unknown> | null;
  result: Record<string, unknown> | null;
  error: string | null;
  attempts: number;
  started: number;
  ended: number;
}

export interface AgentResponse {
  answer: string;
  plan: Plan;
  trace: StepRecord[];
  warnings: string[];
}

export interface ErrorEnvelope {
  code: string;
  message: string;
  hint: string;
}

export type AgentFrame =
  | { type: "plan"; plan: Plan }
  | { type: "step"; step: StepRecord }
  | { type: "token"; text: string }
  | { type: "final"; response: AgentResponse }
  | { type: "error"; error: ErrorEnvelope };

export interface Peak {
  two_theta: number;
  intensity: number;
  hkl: number[];
}

export interface DiffractionPattern {
  two_theta: number[];
  intensity: number[];
  peaks: Peak[];
}

export function isDiffractionPattern(value: unknown): value is DiffractionPattern {
  if (typeof value !== "object" || value === null) return false;
  const v = value as Record<string, unknown>;
  const numbers = (xs: unknown): xs is number[] =>
    Array.isArray(xs) && xs.every((x) => typeof x === "number");
  if (!numbers(v.two_theta) || !numbers(v.intensity)) return false;
  if (v.two_theta.length !== v.intensity.length) return false;
  if (!Array.isArray(v.peaks)) return false;
  return v.peaks.every(
    (p) =>
      typeof p === "object" &&
      p !== null &&
      typeof (p as Peak).two_theta === "number" &&
      typeof (p as Peak).intensity === "number" &&
      Array.isArray((p as Peak).hkl),
  );
}
