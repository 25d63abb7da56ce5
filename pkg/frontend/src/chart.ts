// Inline SVG line chart for diffraction patterns: intensity vs two-theta
// with hoverable peak markers. Axis labels reuse the payload's own numbers
// verbatim (String(value)), never reformatted ones.

import { isDiffractionPattern } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 640;
const HEIGHT = 240;
const PAD = { left: 46, right: 12, top: 12, bottom: 30 };

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, value);
  }
  return el;
}

export function renderPattern(payload: unknown): HTMLElement {
  const container = document.createElement("div");
  container.className = "pattern-chart";

  if (!isDiffractionPattern(payload)) {
    // malformed payload: fall back to the raw JSON so nothing is hidden
    const fallback = document.createElement("pre");
    fallback.className = "pattern-fallback";
    fallback.textContent = JSON.stringify(payload, null, 2);
    container.appendChild(fallback);
    return container;
  }

  const { two_theta, intensity, peaks } = payload;
  const hasSignal = intensity.some((y) => y > 0);
  if (two_theta.length < 2 || !hasSignal) {
    const empty = document.createElement("div");
    empty.className = "pattern-empty";
    empty.textContent = "no reflections in the scanned window";
    container.appendChild(empty);
    return container;
  }

  const xMin = two_theta[0];
  const xMax = two_theta[two_theta.length - 1];
  const yMax = Math.max(...intensity);
  const plotW = WIDTH - PAD.left - PAD.right;
  const plotH = HEIGHT - PAD.top - PAD.bottom;
  const toX = (x: number) => PAD.left + ((x - xMin) / (xMax - xMin)) * plotW;
  const toY = (y: number) => PAD.top + (1 - y / yMax) * plotH;

  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    width: String(WIDTH),
    height: String(HEIGHT),
    role: "img",
  });

  svg.appendChild(
    svgEl("rect", {
      x: String(PAD.left),
      y: String(PAD.top),
      width: String(plotW),
      height: String(plotH),
      class: "chart-bg",
    }),
  );

  const points = two_theta.map((x, i) => `${toX(x).toFixed(2)},${toY(intensity[i]).toFixed(2)}`);
  svg.appendChild(
    svgEl("polyline", { points: points.join(" "), class: "chart-line", fill: "none" }),
  );

  for (const peak of peaks) {
    const marker = svgEl("circle", {
      cx: toX(peak.two_theta).toFixed(2),
      cy: toY(peak.intensity).toFixed(2),
      r: "4",
      class: "peak-marker",
    });
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `hkl (${peak.hkl.join(" ")}) at ${peak.two_theta}, I=${peak.intensity}`;
    marker.appendChild(title);
    svg.appendChild(marker);
  }

  const axisLabel = (text: string, x: number, y: number, cls: string) => {
    const label = svgEl("text", { x: String(x), y: String(y), class: cls });
    label.textContent = text;
    svg.appendChild(label);
  };
  axisLabel(String(xMin), PAD.left, HEIGHT - 10, "axis-x");
  axisLabel(String(xMax), WIDTH - PAD.right - 30, HEIGHT - 10, "axis-x");
  axisLabel(String(yMax), 4, PAD.top + 10, "axis-y");
  axisLabel("two-theta (degrees)", WIDTH / 2 - 60, HEIGHT - 10, "axis-title");
  axisLabel("relative intensity", 4, HEIGHT / 2, "axis-title axis-title-y");

  container.appendChild(svg);
  return container;
}
