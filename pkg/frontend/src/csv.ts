/** CSV loading and schema validation for experiment outputs. */

import { readFileSync } from "fs";
import Papa from "papaparse";

import { FigureKind, FIGURE_SCHEMAS } from "./schema";

/** The input CSV does not match the schema the figure kind requires. */
export class SchemaError extends Error {}

export interface Series {
  /** Distinct grouping value this series belongs to ("" when ungrouped). */
  key: string;
  points: Array<{ x: number; y: number }>;
}

export interface FigureData {
  kind: FigureKind;
  series: Series[];
}

export function loadFigureData(csvPath: string, kind: FigureKind): FigureData {
  const schema = FIGURE_SCHEMAS[kind];
  const text = readFileSync(csvPath, "utf-8");
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new SchemaError(`malformed CSV ${csvPath}: ${first.message}`);
  }
  const header = parsed.meta.fields ?? [];
  if (header.join(",") !== schema.header.join(",")) {
    throw new SchemaError(
      `header mismatch for ${kind}: expected "${schema.header.join(",")}", ` +
        `got "${header.join(",")}"`
    );
  }
  if (parsed.data.length === 0) {
    throw new SchemaError(`no data rows in ${csvPath}`);
  }

  const groups = new Map<string, Series>();
  for (const row of parsed.data) {
    const key = schema.groupBy === null ? "" : row[schema.groupBy];
    const x = Number(row[schema.x]);
    const y = Number(row[schema.y]);
    if (!Number.isFinite(x) || !Number.isFinite(y)) {
      throw new SchemaError(
        `non-numeric ${schema.x}/${schema.y} pair in row ${JSON.stringify(row)}`
      );
    }
    let series = groups.get(key);
    if (series === undefined) {
      series = { key, points: [] };
      groups.set(key, series);
    }
    series.points.push({ x, y });
  }
  return { kind, series: [...groups.values()] };
}
