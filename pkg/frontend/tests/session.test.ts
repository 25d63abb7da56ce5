import { describe, expect, it } from "vitest";

import { Session } from "../src/session.js";
import type { AgentFrame } from "../src/types.js";
import transcript from "./fixtures/defect_transcript.json";

const frames = transcript.frames as AgentFrame[];

describe("Session", () => {
  it("appends user and agent entries in order", () => {
    const session = new Session();
    const entry = session.beginQuery("do science");
    expect(session.messages.length).toBe(2);
    expect(session.messages[0]).toEqual({ role: "user", text: "do science" });
    expect(session.messages[1]).toBe(entry);
  });

  it("permits only one in-flight request", () => {
    const session = new Session();
    session.beginQuery("first");
    expect(session.canSend()).toBe(false);
    expect(() => session.beginQuery("second")).toThrow();
  });

  it("transcript is append-only across a full exchange", () => {
    const session = new Session();
    const entry = session.beginQuery(transcript.query);
    const seen: number[] = [];
    for (const frame of frames) {
      session.acceptFrame(entry, frame);
      seen.push(session.messages.length);
    }
    session.finish(entry);
    expect(new Set(seen)).toEqual(new Set([2])); // no entry ever removed/replaced
    expect(entry.frames.length).toBe(frames.length);
    expect(entry.response?.answer.length).toBeGreaterThan(0);
    expect(session.canSend()).toBe(true);
  });

  it("settings changes apply only to subsequent requests", () => {
    const session = new Session();
    const first = session.beginQuery("one");
    session.updateSettings({ temperature: 0.7, model: "other-model" });
    session.finish(first);
    const second = session.beginQuery("two");
    expect(first.settingsUsed.temperature).toBe(0);
    expect(first.settingsUsed.model).toBe("");
    expect(second.settingsUsed.temperature).toBe(0.7);
    expect(second.settingsUsed.model).toBe("other-model");
  });

  it("marks interrupted streams and keeps their partial frames", () => {
    const session = new Session();
    const entry = session.beginQuery(transcript.query);
    for (const frame of frames.slice(0, 4)) {
      session.acceptFrame(entry, frame);
    }
    session.finish(entry, true);
    expect(entry.interrupted).toBe(true);
    expect(entry.frames.length).toBe(4);
    expect(entry.response).toBeNull();
    expect(session.messages.length).toBe(2);
  });
});
