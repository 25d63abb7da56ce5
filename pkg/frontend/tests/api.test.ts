import { afterEach, describe, expect, it, vi } from "vitest";

import { GatewayClient, GatewayError } from "../src/api.js";
import type { AgentFrame } from "../src/types.js";
import defect from "./fixtures/defect_transcript.json";
import rateLimited from "./fixtures/rate_limited.json";
import unauthorized from "./fixtures/unauthorized.json";

const frames = defect.frames as AgentFrame[];

function sseResponse(items: unknown[]): Response {
  const text = items.map((f) => `data: ${JSON.stringify(f)}\n\n`).join("");
  return new Response(new TextEncoder().encode(text), {
    status: 200,
    headers: { "Content-Type": "text/event-stream" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("GatewayClient.streamChat", () => {
  it("sends the bearer key and replays all frames", async () => {
    const fetchMock = vi.fn(async (_url: unknown, init?: RequestInit) => {
      const headers = init?.headers as Record<string, string>;
      expect(headers["Authorization"]).toBe("Bearer sekrit");
      const body = JSON.parse(String(init?.body));
      expect(body.stream).toBe(true);
      expect(body.query).toBe(defect.query);
      return sseResponse(frames);
    });
    vi.stubGlobal("fetch", fetchMock);

    const client = new GatewayClient("http://gw", "sekrit");
    const seen: AgentFrame[] = [];
    for await (const frame of client.streamChat(defect.query)) {
      seen.push(frame);
    }
    expect(seen).toEqual(frames);
    expect(fetchMock).toHaveBeenCalledWith("http://gw/agent/chat", expect.anything());
  });

  it("maps 429 responses to GatewayError with retryAfter", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        new Response(JSON.stringify(rateLimited.body), {
          status: 429,
          headers: { "Retry-After": rateLimited.retry_after, "Content-Type": "application/json" },
        }),
      ),
    );
    const client = new GatewayClient("http://gw", "sekrit");
    const run = async () => {
      for await (const _ of client.streamChat("q")) {
        // drain
      }
    };
    const error = await run().catch((e) => e as GatewayError);
    expect(error).toBeInstanceOf(GatewayError);
    expect(error.status).toBe(429);
    expect(error.code).toBe("rate_limited");
    expect(error.retryAfter).toBe(Number(rateLimited.retry_after));
  });

  it("maps 401 responses to GatewayError auth", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        new Response(JSON.stringify(unauthorized.body), {
          status: 401,
          headers: { "Content-Type": "application/json" },
        }),
      ),
    );
    const client = new GatewayClient("http://gw", "");
    const error = await client.fetchOpenapi().catch((e) => e as GatewayError);
    expect(error).toBeInstanceOf(GatewayError);
    expect(error.code).toBe("auth");
    expect(error.retryAfter).toBeNull();
  });
});
