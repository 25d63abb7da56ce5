// Gateway client: only the public HTTP contract, nothing privileged.

import { readSseStream } from "./sse.js";
import type { AgentFrame } from "./types.js";

export class GatewayError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public hint: string = "",
    public retryAfter: number | null = null,
  ) {
    super(message);
  }
}

async function toGatewayError(response: Response): Promise<GatewayError> {
  let code = "http_error";
  let message = `HTTP ${response.status}`;
  let hint = "";
  try {
    const body = (await response.json()) as { code?: string; message?: string; hint?: string };
    code = body.code ?? code;
    message = body.message ?? message;
    hint = body.hint ?? "";
  } catch {
    // non-JSON error body; keep the status line
  }
  const retryHeader = response.headers.get("Retry-After");
  const retryAfter = retryHeader === null ? null : Number(retryHeader);
  return new GatewayError(response.status, code, message, hint, retryAfter);
}

export interface ChatOptions {
  model?: string;
  temperature?: number;
}

export class GatewayClient {
  constructor(
    public baseUrl: string,
    public apiKey: string,
  ) {}

  private headers(): Record<string, string> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.apiKey) headers["Authorization"] = `Bearer ${this.apiKey}`;
    return headers;
  }

  async *streamChat(query: string, options: ChatOptions = {}): AsyncGenerator<AgentFrame> {
    const response = await fetch(`${this.baseUrl}/agent/chat`, {
      method: "POST",
      headers: this.headers(),
      body: JSON.stringify({ query, stream: true, ...options }),
    });
    if (!response.ok) throw await toGatewayError(response);
    if (!response.body) throw new GatewayError(0, "no_body", "response had no body");
    for await (const frame of readSseStream(response.body)) {
      yield frame as AgentFrame;
    }
  }

  async fetchOpenapi(): Promise<Record<string, unknown>> {
    const response = await fetch(`${this.baseUrl}/openapi.json`);
    if (!response.ok) throw await toGatewayError(response);
    return (await response.json()) as Record<string, unknown>;
  }
}
