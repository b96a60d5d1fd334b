/** Turn a figure spec into an image file on disk. */

import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";

import { parseAnyCsv, type Summary, type Trace } from "./csv.js";
import { FigureSpecError, validateSpec, type FigureSpec } from "./figure.js";
import { renderFigure, type Curve } from "./svg.js";

function defaultLabel(path: string, trace: Trace): string {
  return trace.meta["algorithm"] ?? basename(path).replace(/\.csv$/, "");
}

function curvesFromInput(path: string, spec: FigureSpec): Curve[] {
  const parsed = parseAnyCsv(readFileSync(path, "utf8"), path);
  if (parsed.kind === "trace") {
    let y: number[];
    if (spec.yColumn === "ab") {
      if (parsed.ab === null) {
        throw new FigureSpecError(`${path}: trace has no ab column values`);
      }
      y = parsed.ab;
    } else {
      y = parsed.epsilon;
    }
    return [{ label: defaultLabel(path, parsed), x: parsed.rounds, y }];
  }
  const summary = parsed as Summary;
  return summary.labels.map((label, i) => ({ label, x: summary.rounds, y: summary.series[i] }));
}

/** Drop rows that cannot appear on a log axis (y <= 0 or non-finite). */
function dropNonPositive(curve: Curve): Curve {
  const x: number[] = [];
  const y: number[] = [];
  curve.x.forEach((xv, i) => {
    const yv = curve.y[i];
    if (Number.isFinite(yv) && yv > 0) {
      x.push(xv);
      y.push(yv);
    }
  });
  return { ...curve, x, y };
}

export function buildCurves(spec: FigureSpec): Curve[] {
  let curves = spec.inputs.flatMap((path) => curvesFromInput(path, spec));
  if (spec.labels !== undefined) {
    if (spec.labels.length !== curves.length) {
      throw new FigureSpecError(
        `got ${spec.labels.length} labels for ${curves.length} curves`,
      );
    }
    curves = curves.map((c, i) => ({ ...c, label: spec.labels![i] }));
  }
  if (spec.rates !== undefined) {
    if (spec.rates.length > curves.length) {
      throw new FigureSpecError(`got ${spec.rates.length} rates for ${curves.length} curves`);
    }
    curves = curves.map((c, i) => (i < spec.rates!.length ? { ...c, rate: spec.rates![i] } : c));
  }
  if (spec.logY) curves = curves.map(dropNonPositive);
  for (const curve of curves) {
    if (curve.x.length === 0) {
      throw new FigureSpecError(
        `curve "${curve.label}" has no plottable points` +
          (spec.logY ? " (rows with value <= 0 are dropped on the log axis)" : ""),
      );
    }
  }
  return curves;
}

export async function plotConvergence(spec: FigureSpec): Promise<string> {
  validateSpec(spec);
  const curves = buildCurves(spec);
  const svg = renderFigure(curves, { logY: spec.logY, yLabel: spec.yColumn });
  if (spec.format === "png") {
    const sharp = (await import("sharp")).default;
    const png = await sharp(Buffer.from(svg)).png().toBuffer();
    writeFileSync(spec.output, png);
  } else {
    writeFileSync(spec.output, svg);
  }
  return spec.output;
}
