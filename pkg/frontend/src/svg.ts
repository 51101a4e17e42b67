import { xAxisLabel, yAxisLabel, type FigureKind, type Series } from "./figure.js";

export interface RenderOptions {
  kind: FigureKind;
  alpha: number;
  lambdaDet?: number;
  logScale?: boolean;
  width?: number;
  height?: number;
}

const MARGIN = { top: 20, right: 28, bottom: 52, left: 72 };
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

function fmtTick(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 0.001 && abs < 10000) {
    return String(Number(value.toPrecision(4)));
  }
  return value.toExponential(0).replace("e+", "e");
}

function linearTicks(lo: number, hi: number, target = 6): number[] {
  const span = hi - lo;
  const base = Math.pow(10, Math.floor(Math.log10(span / target)));
  const err = span / target / base;
  const step = base * (err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1);
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    ticks.push(Number(v.toFixed(12)));
  }
  return ticks;
}

function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let k = Math.ceil(Math.log10(lo) - 1e-9); ; k++) {
    const v = Math.pow(10, k);
    if (v > hi * (1 + 1e-9)) break;
    ticks.push(v);
  }
  return ticks;
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/**
 * Render the series as a standalone SVG string. Pure: the output is a
 * function of the arguments alone.
 */
export function renderFigure(series: Series[], options: RenderOptions): string {
  const width = options.width ?? 640;
  const height = options.height ?? 420;
  const log = options.logScale ?? false;
  const innerW = width - MARGIN.left - MARGIN.right;
  const innerH = height - MARGIN.top - MARGIN.bottom;

  const xs = series.flatMap((s) => s.points.map((pt) => pt.x));
  const ys = series.flatMap((s) => s.points.map((pt) => pt.y));
  if (options.lambdaDet !== undefined) xs.push(options.lambdaDet);

  let xLo = Math.min(...xs);
  let xHi = Math.max(...xs);
  if (xLo === xHi) {
    xLo -= 0.5;
    xHi += 0.5;
  }

  // zero probabilities cannot sit on a log axis; clamp them to a floor
  // half the smallest positive value in view (alpha included, so the
  // floor always exists)
  const positives = ys.concat([options.alpha]).filter((v) => v > 0);
  const floor = Math.min(...positives) / 2;
  const yTop = Math.max(...ys, options.alpha);
  const yLo = log ? floor : 0;
  const yHi = log ? yTop * 1.5 : Math.max(yTop * 1.08, 1e-12);

  const sx = (x: number) => MARGIN.left + ((x - xLo) / (xHi - xLo)) * innerW;
  const syLin = (y: number) => MARGIN.top + innerH - ((y - yLo) / (yHi - yLo)) * innerH;
  const syLog = (y: number) => {
    const clamped = Math.max(y, floor);
    const t = (Math.log10(clamped) - Math.log10(yLo)) / (Math.log10(yHi) - Math.log10(yLo));
    return MARGIN.top + innerH - t * innerH;
  };
  const sy = log ? syLog : syLin;

  const xTicks = linearTicks(xLo, xHi);
  const yTicks = log ? logTicks(yLo, yHi) : linearTicks(yLo, yHi);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="12">`
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);

  parts.push(`<g data-role="y-ticks">`);
  for (const tick of yTicks) {
    const y = sy(tick).toFixed(2);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${width - MARGIN.right}" y2="${y}" stroke="#dddddd"/>`
    );
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${y}" text-anchor="end" dominant-baseline="middle">${fmtTick(tick)}</text>`
    );
  }
  parts.push(`</g>`);

  parts.push(`<g data-role="x-ticks">`);
  for (const tick of xTicks) {
    const x = sx(tick).toFixed(2);
    const yAxisEnd = MARGIN.top + innerH;
    parts.push(
      `<line x1="${x}" y1="${yAxisEnd}" x2="${x}" y2="${yAxisEnd + 5}" stroke="#333333"/>`
    );
    parts.push(
      `<text x="${x}" y="${yAxisEnd + 18}" text-anchor="middle">${fmtTick(tick)}</text>`
    );
  }
  parts.push(`</g>`);

  const axisY = (MARGIN.top + innerH).toFixed(2);
  parts.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${axisY}" stroke="#333333"/>`
  );
  parts.push(
    `<line x1="${MARGIN.left}" y1="${axisY}" x2="${width - MARGIN.right}" y2="${axisY}" stroke="#333333"/>`
  );

  const alphaY = sy(options.alpha).toFixed(2);
  parts.push(
    `<line data-role="alpha-rule" x1="${MARGIN.left}" y1="${alphaY}" ` +
      `x2="${width - MARGIN.right}" y2="${alphaY}" stroke="#555555" stroke-dasharray="6 4"/>`
  );
  parts.push(
    `<text x="${width - MARGIN.right - 4}" y="${Number(alphaY) - 4}" text-anchor="end" ` +
      `fill="#555555">alpha = ${fmtTick(options.alpha)}</text>`
  );

  if (options.lambdaDet !== undefined) {
    const x = sx(options.lambdaDet).toFixed(2);
    parts.push(
      `<line data-role="lambda-rule" x1="${x}" y1="${MARGIN.top}" x2="${x}" y2="${axisY}" ` +
        `stroke="#888888" stroke-dasharray="2 3"/>`
    );
  }

  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const coords = s.points
      .map((pt) => `${sx(pt.x).toFixed(2)},${sy(pt.y).toFixed(2)}`)
      .join(" ");
    parts.push(`<g data-role="series" data-estimator="${esc(s.estimator)}">`);
    parts.push(`<polyline points="${coords}" fill="none" stroke="${color}" stroke-width="1.5"/>`);
    for (const pt of s.points) {
      parts.push(
        `<circle cx="${sx(pt.x).toFixed(2)}" cy="${sy(pt.y).toFixed(2)}" r="3" fill="${color}"/>`
      );
    }
    parts.push(`</g>`);
  });

  parts.push(`<g data-role="legend">`);
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const y = MARGIN.top + 10 + i * 18;
    const x = width - MARGIN.right - 132;
    parts.push(`<line x1="${x}" y1="${y}" x2="${x + 22}" y2="${y}" stroke="${color}" stroke-width="2"/>`);
    parts.push(`<text x="${x + 28}" y="${y + 4}">${esc(s.estimator)}</text>`);
  });
  parts.push(`</g>`);

  parts.push(
    `<text x="${MARGIN.left + innerW / 2}" y="${height - 12}" text-anchor="middle">` +
      `${esc(xAxisLabel(options.kind))}</text>`
  );
  parts.push(
    `<text transform="translate(16 ${MARGIN.top + innerH / 2}) rotate(-90)" ` +
      `text-anchor="middle">${esc(yAxisLabel(options.kind))}</text>`
  );

  parts.push(`</svg>`);
  return parts.join("\n");
}
