/** Hand-rolled SVG rendering for semi-log convergence figures. */

export interface Curve {
  label: string;
  /** Per-point (round, value); values must be > 0 when logY is set. */
  x: number[];
  y: number[];
  /** Optional decay rate: dashed overlay with slope -rate in log space. */
  rate?: number;
}

export interface RenderOptions {
  logY: boolean;
  yLabel: string;
  width?: number;
  height?: number;
}

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"];
const MARGIN = { top: 24, right: 24, bottom: 48, left: 72 };

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

function fmtTick(value: number): string {
  if (value === 0) return "0";
  const exp = Math.floor(Math.log10(Math.abs(value)));
  if (exp >= -3 && exp <= 3) return String(Number(value.toPrecision(6)));
  return `1e${exp}`;
}

/** Evenly spaced "nice" ticks covering [lo, hi]. */
function linearTicks(lo: number, hi: number, count = 6): number[] {
  if (lo === hi) return [lo];
  const rawStep = (hi - lo) / count;
  const mag = 10 ** Math.floor(Math.log10(rawStep));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => s >= rawStep) ?? 10 * mag;
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) ticks.push(t);
  return ticks;
}

/** Decade ticks 10^k covering [lo, hi] (both > 0). */
function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  const kLo = Math.ceil(Math.log10(lo) - 1e-9);
  const kHi = Math.floor(Math.log10(hi) + 1e-9);
  const stride = Math.max(1, Math.ceil((kHi - kLo) / 8));
  for (let k = kLo; k <= kHi; k += stride) ticks.push(10 ** k);
  return ticks;
}

export function renderFigure(curves: Curve[], opts: RenderOptions): string {
  if (curves.length === 0) throw new Error("nothing to draw: no curves");
  const width = opts.width ?? 720;
  const height = opts.height ?? 480;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  const allX = curves.flatMap((c) => c.x);
  const allY = curves.flatMap((c) => c.y);
  const xLo = Math.min(...allX);
  const xHi = Math.max(...allX);
  const yLo = Math.min(...allY);
  const yHi = Math.max(...allY);

  const tx = (x: number) => MARGIN.left + (xHi === xLo ? 0.5 : (x - xLo) / (xHi - xLo)) * plotW;
  const ty = opts.logY
    ? (y: number) =>
        MARGIN.top + plotH - (yHi === yLo ? 0.5 : (Math.log(y) - Math.log(yLo)) / (Math.log(yHi) - Math.log(yLo))) * plotH
    : (y: number) => MARGIN.top + plotH - (yHi === yLo ? 0.5 : (y - yLo) / (yHi - yLo)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(
    `<defs><clipPath id="plot-area"><rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}"/></clipPath></defs>`,
  );

  // axes, grid, ticks
  const xTicks = linearTicks(xLo, xHi);
  const yTicks = opts.logY ? logTicks(yLo, yHi) : linearTicks(yLo, yHi);
  for (const t of xTicks) {
    const px = tx(t);
    parts.push(`<line x1="${px}" y1="${MARGIN.top}" x2="${px}" y2="${MARGIN.top + plotH}" stroke="#eee"/>`);
    parts.push(`<text x="${px}" y="${MARGIN.top + plotH + 18}" text-anchor="middle">${fmtTick(t)}</text>`);
  }
  for (const t of yTicks) {
    const py = ty(t);
    parts.push(`<line x1="${MARGIN.left}" y1="${py}" x2="${MARGIN.left + plotW}" y2="${py}" stroke="#eee"/>`);
    parts.push(`<text x="${MARGIN.left - 6}" y="${py + 4}" text-anchor="end">${fmtTick(t)}</text>`);
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333"/>`,
  );
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${height - 10}" text-anchor="middle">round</text>`,
  );
  parts.push(
    `<text x="18" y="${MARGIN.top + plotH / 2}" text-anchor="middle" transform="rotate(-90 18 ${MARGIN.top + plotH / 2})">${esc(opts.yLabel)}</text>`,
  );

  // curves and dashed rate overlays
  curves.forEach((curve, ci) => {
    const color = PALETTE[ci % PALETTE.length];
    const pts = curve.x.map((x, i) => `${tx(x).toFixed(2)},${ty(curve.y[i]).toFixed(2)}`).join(" ");
    parts.push(
      `<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="1.5" clip-path="url(#plot-area)" class="curve"/>`,
    );
    if (curve.rate !== undefined && opts.logY && curve.x.length >= 2) {
      // anchor the overlay at the first point of the curve's tail
      // (second half), where the decay is governed by the dominant mode
      const a = Math.floor(curve.x.length / 2);
      const x0 = curve.x[a];
      const y0 = curve.y[a];
      const segs: string[] = [];
      for (const x of curve.x.slice(a)) {
        const y = y0 * Math.exp(-curve.rate * (x - x0));
        segs.push(`${tx(x).toFixed(2)},${ty(Math.max(y, yLo)).toFixed(2)}`);
      }
      parts.push(
        `<polyline points="${segs.join(" ")}" fill="none" stroke="${color}" stroke-width="1.5" stroke-dasharray="6 4" clip-path="url(#plot-area)" class="overlay"/>`,
      );
    }
  });

  // legend (top right, one row per curve)
  curves.forEach((curve, ci) => {
    const color = PALETTE[ci % PALETTE.length];
    const lx = MARGIN.left + plotW - 180;
    const ly = MARGIN.top + 16 + 18 * ci;
    parts.push(`<line x1="${lx}" y1="${ly - 4}" x2="${lx + 28}" y2="${ly - 4}" stroke="${color}" stroke-width="1.5"/>`);
    parts.push(`<text x="${lx + 34}" y="${ly}">${esc(curve.label)}</text>`);
  });

  parts.push("</svg>");
  return parts.join("\n");
}
