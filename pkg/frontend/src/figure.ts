import { CsvSchemaError, type SweepRow } from "./csv.js";

export const FIGURE_KINDS = [
  "oe-vs-p",
  "mis-vs-p",
  "oe-vs-n",
  "mis-vs-n",
  "mis-vs-lambda",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface FigureSpec {
  input: string;
  kind: FigureKind;
  output: string;
  alpha: number;
  lambdaDet?: number;
  logScale: boolean;
}

export interface SeriesPoint {
  x: number;
  y: number;
}

export interface Series {
  estimator: string;
  points: SeriesPoint[];
}

export class EmptyDataError extends Error {}

export function isFigureKind(value: string): value is FigureKind {
  return (FIGURE_KINDS as readonly string[]).includes(value);
}

export function xAxisLabel(kind: FigureKind): string {
  if (kind.endsWith("-p")) return "sensors p";
  if (kind.endsWith("-n")) return "snapshots n";
  return "signal eigenvalue lambda_1";
}

export function yAxisLabel(kind: FigureKind): string {
  return kind.startsWith("oe-")
    ? "over-estimation probability"
    : "mis-estimation probability";
}

function xOf(row: SweepRow, kind: FigureKind): number {
  if (kind.endsWith("-p")) return row.p;
  if (kind.endsWith("-n")) return row.n;
  // lambda sweeps encode the value in the point label, e.g. fig7@lambda1=0.25
  const match = row.preset.match(/@lambda1=([^=]+)$/);
  const value = match ? Number(match[1]) : NaN;
  if (!Number.isFinite(value)) {
    throw new CsvSchemaError(
      `row label ${JSON.stringify(row.preset)} carries no lambda1 value`
    );
  }
  return value;
}

function yOf(row: SweepRow, kind: FigureKind): number {
  return kind.startsWith("oe-") ? row.pOver : row.pMis;
}

/** One series per estimator, points sorted by the swept variable. */
export function extractSeries(rows: SweepRow[], kind: FigureKind): Series[] {
  if (rows.length === 0) {
    throw new EmptyDataError("no data rows to plot");
  }
  const groups = new Map<string, SeriesPoint[]>();
  for (const row of rows) {
    const points = groups.get(row.estimator) ?? [];
    points.push({ x: xOf(row, kind), y: yOf(row, kind) });
    groups.set(row.estimator, points);
  }
  return [...groups.entries()].map(([estimator, points]) => ({
    estimator,
    points: points.slice().sort((a, b) => a.x - b.x),
  }));
}
