import { readFileSync } from "node:fs";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { parseSweepCsv, type SweepRow } from "../src/csv.js";
import { EmptyDataError, extractSeries, xAxisLabel, yAxisLabel } from "../src/figure.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));

const fixture = (name: string) => parseSweepCsv(readFileSync(join(FIXTURES, name), "utf8"));

const row = (overrides: Partial<SweepRow>): SweepRow => ({
  preset: "x",
  p: 10,
  n: 20,
  qTrue: 1,
  estimator: "ls-rmt",
  alpha: 0.005,
  trials: 100,
  seed: 1,
  pUnder: 0,
  pCorrect: 0.9,
  pOver: 0.1,
  pMis: 0.1,
  errors: 0,
  ...overrides,
});

describe("extractSeries", () => {
  it("groups by estimator and sorts by p", () => {
    const series = extractSeries(fixture("fig3_small.csv"), "oe-vs-p");
    expect(series.map((s) => s.estimator)).toEqual(["ls-rmt", "rmt", "aic", "mdl"]);
    for (const s of series) {
      expect(s.points.map((pt) => pt.x)).toEqual([16, 24, 32, 48, 64, 96, 128]);
    }
  });

  it("maps oe kinds to p_over and mis kinds to p_mis", () => {
    const rows = [row({ pOver: 0.25, pMis: 0.75 })];
    expect(extractSeries(rows, "oe-vs-p")[0]!.points[0]!.y).toBe(0.25);
    expect(extractSeries(rows, "mis-vs-p")[0]!.points[0]!.y).toBe(0.75);
  });

  it("uses n as the x axis for -vs-n kinds", () => {
    const series = extractSeries(fixture("fig6_small.csv"), "mis-vs-n");
    expect(series[0]!.points.map((pt) => pt.x)).toEqual([24, 32, 48, 64, 96, 128, 192, 256]);
  });

  it("reads lambda from the point label", () => {
    const series = extractSeries(fixture("fig7_small.csv"), "mis-vs-lambda");
    const xs = series[0]!.points.map((pt) => pt.x);
    expect(xs).toHaveLength(24);
    expect(xs[0]).toBeCloseTo(0.1 * Math.sqrt(0.5), 10);
    expect(xs[23]).toBeCloseTo(8 * Math.sqrt(0.5), 10);
    const sorted = xs.slice().sort((a, b) => a - b);
    expect(xs).toEqual(sorted);
  });

  it("rejects labels without a lambda value", () => {
    expect(() => extractSeries([row({ preset: "fig3" })], "mis-vs-lambda")).toThrowError(
      /"fig3" carries no lambda1 value/
    );
  });

  it("rejects empty data", () => {
    expect(() => extractSeries([], "oe-vs-p")).toThrowError(EmptyDataError);
  });
});

describe("axis labels", () => {
  it("names the swept variable and the probability", () => {
    expect(xAxisLabel("oe-vs-p")).toMatch(/p$/);
    expect(xAxisLabel("mis-vs-n")).toMatch(/n$/);
    expect(xAxisLabel("mis-vs-lambda")).toMatch(/lambda_1$/);
    expect(yAxisLabel("oe-vs-n")).toMatch(/^over-estimation/);
    expect(yAxisLabel("mis-vs-lambda")).toMatch(/^mis-estimation/);
  });
});
