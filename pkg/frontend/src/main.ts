// Wire-up: settings panel, sidebar, send flow with streamed rendering.

import { GatewayClient, GatewayError } from "./api.js";
import { renderErrorBanner, renderPlan, renderStepCard, renderToolSidebar, renderWarnings, startCountdown } from "./render.js";
import { Session, type AgentEntry } from "./session.js";
import { loadSettings, saveSettings } from "./settings.js";

const session = new Session(loadSettings());

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const transcript = byId<HTMLDivElement>("transcript");
const queryInput = byId<HTMLTextAreaElement>("query");
const sendButton = byId<HTMLButtonElement>("send");
const settingsPanel = byId<HTMLDivElement>("settings-panel");
const settingsError = byId<HTMLDivElement>("settings-error");
const sidebar = byId<HTMLDivElement>("sidebar");

function client(): GatewayClient {
  return new GatewayClient(session.settings.gatewayUrl, session.settings.apiKey);
}

function bindSettings(): void {
  const url = byId<HTMLInputElement>("setting-url");
  const key = byId<HTMLInputElement>("setting-key");
  const model = byId<HTMLInputElement>("setting-model");
  const temperature = byId<HTMLInputElement>("setting-temperature");
  url.value = session.settings.gatewayUrl;
  key.value = session.settings.apiKey;
  model.value = session.settings.model;
  temperature.value = String(session.settings.temperature);
  byId<HTMLButtonElement>("settings-save").addEventListener("click", () => {
    session.updateSettings({
      gatewayUrl: url.value.trim() || session.settings.gatewayUrl,
      apiKey: key.value.trim(),
      model: model.value.trim(),
      temperature: Number(temperature.value) || 0,
    });
    saveSettings(session.settings);
    settingsError.textContent = "";
    settingsPanel.classList.remove("open");
    void refreshSidebar();
  });
  byId<HTMLButtonElement>("settings-toggle").addEventListener("click", () => {
    settingsPanel.classList.toggle("open");
  });
}

async function refreshSidebar(): Promise<void> {
  sidebar.textContent = "";
  try {
    const doc = await client().fetchOpenapi();
    sidebar.appendChild(renderToolSidebar(doc));
  } catch {
    sidebar.appendChild(Object.assign(document.createElement("div"), {
      className: "sidebar-error",
      textContent: "gateway unreachable",
    }));
  }
}

function appendUserBubble(text: string): void {
  const bubble = document.createElement("div");
  bubble.className = "bubble user";
  bubble.textContent = text;
  transcript.appendChild(bubble);
}

function agentContainer(): { root: HTMLDivElement; steps: HTMLDivElement; answer: HTMLDivElement } {
  const root = document.createElement("div");
  root.className = "bubble agent";
  const steps = document.createElement("div");
  steps.className = "steps";
  const answer = document.createElement("div");
  answer.className = "answer streaming";
  root.appendChild(steps);
  root.appendChild(answer);
  transcript.appendChild(root);
  return { root, steps, answer };
}

function showError(root: HTMLElement, err: unknown, query: string): void {
  if (err instanceof GatewayError) {
    const banner = renderErrorBanner(
      { code: err.code, message: err.message, hint: err.hint },
      err.retryAfter,
    );
    if (err.status === 401) {
      settingsPanel.classList.add("open");
      settingsError.textContent = err.message;
    }
    if (err.retryAfter !== null) {
      startCountdown(banner);
    } else {
      const retry = document.createElement("button");
      retry.className = "retry-button";
      retry.textContent = "retry";
      retry.addEventListener("click", () => void send(query));
      banner.appendChild(retry);
    }
    root.appendChild(banner);
  } else {
    root.appendChild(
      renderErrorBanner({
        code: "stream_interrupted",
        message: String(err),
        hint: "partial results above are preserved; resume is not possible",
      }),
    );
  }
}

async function send(query: string): Promise<void> {
  if (!session.canSend() || !query.trim()) return;
  const entry: AgentEntry = session.beginQuery(query);
  sendButton.disabled = true;
  appendUserBubble(query);
  const { root, steps, answer } = agentContainer();
  let interrupted = false;
  try {
    const options: { model?: string; temperature?: number } = {};
    if (entry.settingsUsed.model) options.model = entry.settingsUsed.model;
    if (entry.settingsUsed.temperature) options.temperature = entry.settingsUsed.temperature;
    for await (const frame of client().streamChat(query, options)) {
      session.acceptFrame(entry, frame);
      switch (frame.type) {
        case "plan":
          steps.appendChild(renderPlan(frame.plan));
          break;
        case "step":
          steps.appendChild(renderStepCard(frame.step));
          break;
        case "token":
          answer.textContent = (answer.textContent ?? "") + frame.text;
          break;
        case "final":
          answer.classList.remove("streaming");
          answer.textContent = frame.response.answer;
          root.appendChild(renderWarnings(frame.response.warnings));
          break;
        case "error":
          showError(root, new GatewayError(500, frame.error.code, frame.error.message, frame.error.hint), query);
          break;
      }
      transcript.scrollTop = transcript.scrollHeight;
    }
  } catch (err) {
    interrupted = true;
    answer.classList.add("interrupted");
    showError(root, err, query);
  } finally {
    session.finish(entry, interrupted);
    sendButton.disabled = false;
  }
}

export function init(): void {
  bindSettings();
  void refreshSidebar();
  sendButton.addEventListener("click", () => {
    const text = queryInput.value;
    queryInput.value = "";
    void send(text);
  });
  queryInput.addEventListener("keydown", (event) => {
    if (event.key === "Enter" && (event.ctrlKey || event.metaKey)) {
      event.preventDefault();
      const text = queryInput.value;
      queryInput.value = "";
      void send(text);
    }
  });
}

if (typeof document !== "undefined" && document.getElementById("transcript")) {
  init();
}
