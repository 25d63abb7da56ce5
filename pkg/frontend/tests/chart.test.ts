import { describe, expect, it } from "vitest";

import { renderPattern } from "../src/chart.js";
import type { DiffractionPattern } from "../src/types.js";
import pattern from "./fixtures/pattern_response.json";

const si = pattern as DiffractionPattern;

describe("renderPattern", () => {
  it("draws a line and one hoverable marker per peak", () => {
    const chart = renderPattern(si);
    const svg = chart.querySelector("svg");
    expect(svg).not.toBeNull();
    expect(svg!.querySelector("polyline")).not.toBeNull();
    const markers = svg!.querySelectorAll(".peak-marker");
    expect(markers.length).toBe(si.peaks.length);
    // hkl shown on hover via <title>
    const firstTitle = markers[0].querySelector("title")?.textContent ?? "";
    expect(firstTitle).toContain(`(${si.peaks[0].hkl.join(" ")})`);
    expect(firstTitle).toContain(String(si.peaks[0].two_theta));
  });

  it("labels axes with the payload's own grid bounds", () => {
    const chart = renderPattern(si);
    const text = chart.textContent ?? "";
    expect(text).toContain(String(si.two_theta[0]));
    expect(text).toContain(String(si.two_theta[si.two_theta.length - 1]));
    expect(text).toContain("two-theta (degrees)");
    expect(text).toContain("relative intensity");
  });

  it("shows a placeholder for an all-zero pattern", () => {
    const empty: DiffractionPattern = {
      two_theta: [20, 20.02, 20.04],
      intensity: [0, 0, 0],
      peaks: [],
    };
    const chart = renderPattern(empty);
    expect(chart.querySelector("svg")).toBeNull();
    expect(chart.textContent).toContain("no reflections");
  });

  it("falls back to raw JSON for malformed payloads", () => {
    const chart = renderPattern({ bogus: true, readings: "zzz" });
    expect(chart.querySelector("svg")).toBeNull();
    const fallback = chart.querySelector(".pattern-fallback");
    expect(fallback?.textContent).toContain('"bogus": true');
  });
});
