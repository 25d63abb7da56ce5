// Session state: an append-only transcript, one in-flight request at a
// time, and settings that apply only to requests sent after the change.

import type { AgentFrame, AgentResponse } from "./types.js";

export interface Settings {
  gatewayUrl: string;
  apiKey: string;
  model: string;
  temperature: number;
}

export const DEFAULT_SETTINGS: Settings = {
  gatewayUrl: "http://127.0.0.1:8042",
  apiKey: "",
  model: "",
  temperature: 0,
};

export interface UserEntry {
  role: "user";
  text: string;
}

export interface AgentEntry {
  role: "agent";
  frames: AgentFrame[];
  response: AgentResponse | null;
  interrupted: boolean;
  settingsUsed: Settings;
}

export type TranscriptEntry = UserEntry | AgentEntry;

export class Session {
  private transcript: TranscriptEntry[] = [];
  private streaming = false;
  settings: Settings;

  constructor(settings: Settings = DEFAULT_SETTINGS) {
    this.settings = { ...settings };
  }

  get messages(): readonly TranscriptEntry[] {
    return this.transcript;
  }

  get isStreaming(): boolean {
    return this.streaming;
  }

  canSend(): boolean {
    return !this.streaming;
  }

  updateSettings(patch: Partial<Settings>): void {
    // takes effect for the NEXT beginQuery; in-flight entries keep their snapshot
    this.settings = { ...this.settings, ...patch };
  }

  beginQuery(text: string): AgentEntry {
    if (this.streaming) throw new Error("a request is already in flight");
    this.streaming = true;
    this.transcript.push({ role: "user", text });
    const entry: AgentEntry = {
      role: "agent",
      frames: [],
      response: null,
      interrupted: false,
      settingsUsed: { ...this.settings },
    };
    this.transcript.push(entry);
    return entry;
  }

  acceptFrame(entry: AgentEntry, frame: AgentFrame): void {
    entry.frames.push(frame);
    if (frame.type === "final") {
      entry.response = frame.response;
    }
  }

  finish(entry: AgentEntry, interrupted = false): void {
    entry.interrupted = interrupted;
    this.streaming = false;
  }
}
