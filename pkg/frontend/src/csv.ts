/** Sweep results CSV: one row per (grid point, estimator). */

export interface SweepRow {
  preset: string;
  p: number;
  n: number;
  qTrue: number;
  estimator: string;
  alpha: number;
  trials: number;
  seed: number;
  pUnder: number;
  pCorrect: number;
  pOver: number;
  pMis: number;
  errors: number;
}

export const REQUIRED_COLUMNS = [
  "preset",
  "p",
  "n",
  "q_true",
  "estimator",
  "alpha",
  "trials",
  "seed",
  "p_under",
  "p_correct",
  "p_over",
  "p_mis",
  "errors",
] as const;

export class CsvSchemaError extends Error {}

/**
 * Parse a sweep results CSV. Column order is free; every required
 * column must be present. The writer never quotes fields and point
 * labels contain no commas, so a plain split is within contract.
 */
export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.trim() !== "");
  const headerLine = lines[0];
  if (headerLine === undefined) {
    throw new CsvSchemaError("empty file: no header row");
  }
  const header = headerLine.split(",").map((name) => name.trim());
  const index = new Map(header.map((name, i) => [name, i]));
  for (const column of REQUIRED_COLUMNS) {
    if (!index.has(column)) {
      throw new CsvSchemaError(`missing required column "${column}"`);
    }
  }

  const field = (fields: string[], column: string): string =>
    fields[index.get(column)!] ?? "";
  const numeric = (fields: string[], column: string, lineNo: number): number => {
    const raw = field(fields, column);
    const value = Number(raw);
    if (raw.trim() === "" || !Number.isFinite(value)) {
      throw new CsvSchemaError(
        `line ${lineNo}: bad numeric value ${JSON.stringify(raw)} in column "${column}"`
      );
    }
    return value;
  };

  return lines.slice(1).map((line, i) => {
    const fields = line.split(",");
    const lineNo = i + 2;
    if (fields.length < header.length) {
      throw new CsvSchemaError(
        `line ${lineNo}: expected ${header.length} fields, got ${fields.length}`
      );
    }
    return {
      preset: field(fields, "preset"),
      p: numeric(fields, "p", lineNo),
      n: numeric(fields, "n", lineNo),
      qTrue: numeric(fields, "q_true", lineNo),
      estimator: field(fields, "estimator"),
      alpha: numeric(fields, "alpha", lineNo),
      trials: numeric(fields, "trials", lineNo),
      seed: numeric(fields, "seed", lineNo),
      pUnder: numeric(fields, "p_under", lineNo),
      pCorrect: numeric(fields, "p_correct", lineNo),
      pOver: numeric(fields, "p_over", lineNo),
      pMis: numeric(fields, "p_mis", lineNo),
      errors: numeric(fields, "errors", lineNo),
    };
  });
}
