/** Figure description: which CSVs to draw and how. */

import { readFileSync } from "node:fs";
import { parse as parseToml } from "smol-toml";

export class FigureSpecError extends Error {}

export interface FigureSpec {
  /** Trace or summary CSV paths; a summary contributes one curve per column. */
  inputs: string[];
  /** Optional curve labels; must match the curve count and be unique. */
  labels?: string[];
  /** Which trace column to plot. Summaries always plot their own columns. */
  yColumn: "epsilon" | "ab";
  /** Semi-log y-axis (default). Rows with y <= 0 are dropped before plotting. */
  logY: boolean;
  /**
   * Optional per-curve theoretical rates R >= 0, drawn as dashed lines
   * of slope -R in log space anchored at the curve's first tail point.
   * Shorter than the curve list is fine; extra entries are an error.
   */
  rates?: number[];
  output: string;
  format: "svg" | "png";
}

export const SPEC_DEFAULTS = { yColumn: "epsilon", logY: true, format: "svg" } as const;

export function validateSpec(spec: FigureSpec): FigureSpec {
  if (spec.inputs.length === 0) {
    throw new FigureSpecError("figure needs at least one input CSV");
  }
  if (spec.labels !== undefined && new Set(spec.labels).size !== spec.labels.length) {
    throw new FigureSpecError("curve labels must be unique");
  }
  if (spec.yColumn !== "epsilon" && spec.yColumn !== "ab") {
    throw new FigureSpecError(`y-column must be "epsilon" or "ab", got "${spec.yColumn}"`);
  }
  if (spec.rates !== undefined) {
    for (const r of spec.rates) {
      if (!Number.isFinite(r) || r < 0) {
        throw new FigureSpecError(`rates must be finite and >= 0, got ${r}`);
      }
    }
  }
  if (spec.format !== "svg" && spec.format !== "png") {
    throw new FigureSpecError(`format must be "svg" or "png", got "${spec.format}"`);
  }
  if (!spec.output) throw new FigureSpecError("figure needs an output path");
  return spec;
}

function asStringArray(value: unknown, key: string): string[] {
  if (!Array.isArray(value) || !value.every((v) => typeof v === "string")) {
    throw new FigureSpecError(`spec key "${key}" must be an array of strings`);
  }
  return value;
}

function asNumberArray(value: unknown, key: string): number[] {
  if (!Array.isArray(value) || !value.every((v) => typeof v === "number")) {
    throw new FigureSpecError(`spec key "${key}" must be an array of numbers`);
  }
  return value;
}

/** Load a spec from TOML: inputs, labels, y_column, log_y, rates, output, format. */
export function specFromToml(text: string, source: string): FigureSpec {
  let doc: Record<string, unknown>;
  try {
    doc = parseToml(text);
  } catch (err) {
    throw new FigureSpecError(`${source}: invalid TOML (${(err as Error).message})`);
  }
  const known = new Set(["inputs", "labels", "y_column", "log_y", "rates", "output", "format"]);
  for (const key of Object.keys(doc)) {
    if (!known.has(key)) throw new FigureSpecError(`${source}: unknown spec key "${key}"`);
  }
  if (doc.inputs === undefined) throw new FigureSpecError(`${source}: spec key "inputs" is required`);
  if (doc.output === undefined || typeof doc.output !== "string") {
    throw new FigureSpecError(`${source}: spec key "output" (string) is required`);
  }
  const spec: FigureSpec = {
    inputs: asStringArray(doc.inputs, "inputs"),
    labels: doc.labels === undefined ? undefined : asStringArray(doc.labels, "labels"),
    yColumn: (doc.y_column ?? SPEC_DEFAULTS.yColumn) as FigureSpec["yColumn"],
    logY: doc.log_y === undefined ? SPEC_DEFAULTS.logY : doc.log_y === true,
    rates: doc.rates === undefined ? undefined : asNumberArray(doc.rates, "rates"),
    output: doc.output,
    format: (doc.format ?? SPEC_DEFAULTS.format) as FigureSpec["format"],
  };
  return validateSpec(spec);
}

export function loadSpec(path: string): FigureSpec {
  return specFromToml(readFileSync(path, "utf8"), path);
}
