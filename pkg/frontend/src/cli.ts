import { readFileSync, writeFileSync } from "node:fs";

import { CsvSchemaError, parseSweepCsv } from "./csv.js";
import {
  EmptyDataError,
  FIGURE_KINDS,
  extractSeries,
  isFigureKind,
  type FigureSpec,
} from "./figure.js";
import { renderFigure } from "./svg.js";

export class UsageError extends Error {}

const USAGE =
  "usage: srcenum-plots <input.csv> <kind> <output.svg> " +
  "[--alpha A] [--lambda-det L] [--log]\n" +
  `  kind: ${FIGURE_KINDS.join(", ")}`;

export function buildSpec(argv: string[]): FigureSpec {
  const positional: string[] = [];
  let alpha = 0.005;
  let lambdaDet: number | undefined;
  let logScale = false;

  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i]!;
    if (arg === "--log") {
      logScale = true;
    } else if (arg === "--alpha" || arg === "--lambda-det") {
      const raw = argv[++i];
      const value = Number(raw);
      if (raw === undefined || !Number.isFinite(value) || value <= 0) {
        throw new UsageError(`${arg} expects a positive number, got ${raw ?? "nothing"}`);
      }
      if (arg === "--alpha") alpha = value;
      else lambdaDet = value;
    } else if (arg.startsWith("--")) {
      throw new UsageError(`unknown flag ${arg}\n${USAGE}`);
    } else {
      positional.push(arg);
    }
  }

  if (positional.length !== 3) {
    throw new UsageError(USAGE);
  }
  const [input, kind, output] = positional as [string, string, string];
  if (!isFigureKind(kind)) {
    throw new UsageError(`unknown figure kind ${JSON.stringify(kind)}\n${USAGE}`);
  }
  return { input, kind, output, alpha, lambdaDet, logScale };
}

/** Returns the process exit code: 0 ok, 1 bad input, 2 io failure. */
export function run(argv: string[], log: (message: string) => void = console.error): number {
  let spec: FigureSpec;
  try {
    spec = buildSpec(argv);
  } catch (err) {
    log((err as Error).message);
    return 1;
  }

  let text: string;
  try {
    text = readFileSync(spec.input, "utf8");
  } catch (err) {
    log(`cannot read ${spec.input}: ${(err as Error).message}`);
    return 2;
  }

  let svg: string;
  try {
    const series = extractSeries(parseSweepCsv(text), spec.kind);
    svg = renderFigure(series, {
      kind: spec.kind,
      alpha: spec.alpha,
      lambdaDet: spec.lambdaDet,
      logScale: spec.logScale,
    });
  } catch (err) {
    if (err instanceof CsvSchemaError || err instanceof EmptyDataError) {
      log(`${spec.input}: ${err.message}`);
      return 1;
    }
    throw err;
  }

  try {
    writeFileSync(spec.output, svg + "\n");
  } catch (err) {
    log(`cannot write ${spec.output}: ${(err as Error).message}`);
    return 2;
  }
  return 0;
}
