/** Figure rendering: CSV in, SVG file out. */

import { mkdirSync, writeFileSync } from "fs";
import { dirname } from "path";

import { FigureData, loadFigureData } from "./csv";
import { FigureKind } from "./schema";
import { renderSvg } from "./svg";

export interface FigureSpec {
  inputCsv: string;
  figureKind: FigureKind;
  outputImage: string;
}

export interface RenderResult {
  outputImage: string;
  seriesCount: number;
}

/** Render one figure; returns the series count for callers that verify it. */
export function render(spec: FigureSpec): RenderResult {
  if (!spec.outputImage.endsWith(".svg")) {
    throw new RangeError(
      `only SVG output is supported, got ${spec.outputImage}`
    );
  }
  const data: FigureData = loadFigureData(spec.inputCsv, spec.figureKind);
  const svg = renderSvg(data);
  mkdirSync(dirname(spec.outputImage), { recursive: true });
  writeFileSync(spec.outputImage, svg, "utf-8");
  return { outputImage: spec.outputImage, seriesCount: data.series.length };
}
