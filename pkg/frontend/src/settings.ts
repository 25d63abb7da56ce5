// Settings persistence. The API key lives in session storage only: it is
// gone when the tab closes and never written to localStorage or cookies.

import { DEFAULT_SETTINGS, type Settings } from "./session.js";

const STORAGE_KEY = "matagent-chat-settings";

export function loadSettings(storage: Storage = sessionStorage): Settings {
  try {
    const raw = storage.getItem(STORAGE_KEY);
    if (!raw) return { ...DEFAULT_SETTINGS };
    return { ...DEFAULT_SETTINGS, ...(JSON.parse(raw) as Partial<Settings>) };
  } catch {
    return { ...DEFAULT_SETTINGS };
  }
}

export function saveSettings(settings: Settings, storage: Storage = sessionStorage): void {
  storage.setItem(STORAGE_KEY, JSON.stringify(settings));
}
