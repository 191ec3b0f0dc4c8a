/** Minimal deterministic SVG line charts; no DOM required. */

import { FigureData } from "./csv";
import { FIGURE_SCHEMAS } from "./schema";

const WIDTH = 640;
const HEIGHT = 420;
const MARGIN = { top: 48, right: 24, bottom: 56, left: 72 };

const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

const fmt = (value: number): string => {
  const rounded = Number(value.toPrecision(6));
  return String(rounded);
};

interface Scale {
  (value: number): number;
  ticks: number[];
}

function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  if (lo === hi) {
    // degenerate domain: pad so the single value sits mid-axis
    lo -= 1;
    hi += 1;
  }
  const scale = ((value: number) =>
    outLo + ((value - lo) / (hi - lo)) * (outHi - outLo)) as Scale;
  const count = 5;
  scale.ticks = Array.from({ length: count + 1 }, (_, i) => lo + ((hi - lo) * i) / count);
  return scale;
}

export function renderSvg(data: FigureData): string {
  const schema = FIGURE_SCHEMAS[data.kind];
  const xs = data.series.flatMap((s) => s.points.map((p) => p.x));
  const ys = data.series.flatMap((s) => s.points.map((p) => p.y));
  const x = linearScale(Math.min(...xs), Math.max(...xs), MARGIN.left, WIDTH - MARGIN.right);
  const y = linearScale(Math.min(...ys, 0), Math.max(...ys), HEIGHT - MARGIN.bottom, MARGIN.top);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif" font-size="12">`
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="15">${schema.title}</text>`
  );

  // axes
  const axisY = HEIGHT - MARGIN.bottom;
  parts.push(
    `<line x1="${MARGIN.left}" y1="${axisY}" x2="${WIDTH - MARGIN.right}" y2="${axisY}" stroke="black"/>`
  );
  parts.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${axisY}" stroke="black"/>`
  );
  for (const tick of x.ticks) {
    const px = x(tick);
    parts.push(`<line x1="${fmt(px)}" y1="${axisY}" x2="${fmt(px)}" y2="${axisY + 5}" stroke="black"/>`);
    parts.push(
      `<text x="${fmt(px)}" y="${axisY + 20}" text-anchor="middle">${fmt(tick)}</text>`
    );
  }
  for (const tick of y.ticks) {
    const py = y(tick);
    parts.push(`<line x1="${MARGIN.left - 5}" y1="${fmt(py)}" x2="${MARGIN.left}" y2="${fmt(py)}" stroke="black"/>`);
    parts.push(
      `<text x="${MARGIN.left - 9}" y="${fmt(py + 4)}" text-anchor="end">${fmt(tick)}</text>`
    );
  }
  parts.push(
    `<text x="${(MARGIN.left + WIDTH - MARGIN.right) / 2}" y="${HEIGHT - 12}" ` +
      `text-anchor="middle">${schema.xLabel}</text>`
  );
  parts.push(
    `<text x="18" y="${(MARGIN.top + axisY) / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 18 ${(MARGIN.top + axisY) / 2})">${schema.yLabel}</text>`
  );

  // one polyline (plus point markers) per series
  data.series.forEach((series, i) => {
    const color = PALETTE[i % PALETTE.length];
    const sorted = [...series.points].sort((a, b) => a.x - b.x);
    const coords = sorted.map((p) => `${fmt(x(p.x))},${fmt(y(p.y))}`).join(" ");
    parts.push(
      `<polyline class="series" fill="none" stroke="${color}" stroke-width="2" points="${coords}"/>`
    );
    for (const p of sorted) {
      parts.push(
        `<circle cx="${fmt(x(p.x))}" cy="${fmt(y(p.y))}" r="3" fill="${color}"/>`
      );
    }
  });

  // legend for grouped figures
  if (schema.groupBy !== null) {
    data.series.forEach((series, i) => {
      const color = PALETTE[i % PALETTE.length];
      const ly = MARGIN.top + 8 + i * 18;
      const lx = WIDTH - MARGIN.right - 150;
      parts.push(`<line x1="${lx}" y1="${ly}" x2="${lx + 22}" y2="${ly}" stroke="${color}" stroke-width="2"/>`);
      parts.push(
        `<text x="${lx + 28}" y="${ly + 4}">${schema.groupBy} = ${series.key}</text>`
      );
    });
  }

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
