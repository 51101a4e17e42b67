import { readFileSync } from "node:fs";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { parseSweepCsv } from "../src/csv.js";
import { extractSeries, type Series } from "../src/figure.js";
import { renderFigure } from "../src/svg.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));

const fixtureSeries = (name: string, kind: Parameters<typeof extractSeries>[1]) =>
  extractSeries(parseSweepCsv(readFileSync(join(FIXTURES, name), "utf8")), kind);

const count = (haystack: string, needle: string) => haystack.split(needle).length - 1;

describe("renderFigure", () => {
  it("draws one polyline per estimator with a legend", () => {
    const series = fixtureSeries("fig3_small.csv", "oe-vs-p");
    const svg = renderFigure(series, { kind: "oe-vs-p", alpha: 0.005 });
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(count(svg, 'data-role="series"')).toBe(4);
    expect(count(svg, "<polyline ")).toBe(4);
    for (const name of ["ls-rmt", "rmt", "aic", "mdl"]) {
      expect(svg).toContain(`data-estimator="${name}"`);
    }
    expect(count(svg, 'data-role="legend"')).toBe(1);
  });

  it("draws the dashed alpha rule and labels it", () => {
    const series = fixtureSeries("fig3_small.csv", "oe-vs-p");
    const svg = renderFigure(series, { kind: "oe-vs-p", alpha: 0.005 });
    const rule = svg.match(/<line data-role="alpha-rule"[^/]*\/>/)![0];
    expect(rule).toContain("stroke-dasharray");
    expect(svg).toContain("alpha = 0.005");
  });

  it("draws the vertical lambda rule only when asked", () => {
    const series = fixtureSeries("fig7_small.csv", "mis-vs-lambda");
    const withRule = renderFigure(series, {
      kind: "mis-vs-lambda",
      alpha: 0.005,
      lambdaDet: Math.sqrt(0.5),
    });
    const withoutRule = renderFigure(series, { kind: "mis-vs-lambda", alpha: 0.005 });
    expect(count(withRule, 'data-role="lambda-rule"')).toBe(1);
    expect(count(withoutRule, 'data-role="lambda-rule"')).toBe(0);
  });

  it("is pure: identical input gives identical output", () => {
    const series = fixtureSeries("fig6_small.csv", "mis-vs-n");
    const options = { kind: "mis-vs-n" as const, alpha: 0.005, logScale: true };
    expect(renderFigure(series, options)).toBe(renderFigure(series, options));
  });

  it("places larger probabilities higher on the canvas", () => {
    const series: Series[] = [
      {
        estimator: "ls-rmt",
        points: [
          { x: 1, y: 0.2 },
          { x: 2, y: 0.8 },
        ],
      },
    ];
    const svg = renderFigure(series, { kind: "mis-vs-p", alpha: 0.005 });
    const pts = svg.match(/<polyline points="([^"]+)"/)![1]!;
    const [lo, hi] = pts.split(" ").map((pair) => Number(pair.split(",")[1]));
    expect(hi!).toBeLessThan(lo!); // SVG y grows downward
  });

  it("survives all-zero series on a log axis via the alpha floor", () => {
    const series: Series[] = [
      { estimator: "rmt", points: [{ x: 1, y: 0 }, { x: 2, y: 0 }] },
    ];
    const svg = renderFigure(series, { kind: "oe-vs-p", alpha: 0.005, logScale: true });
    expect(svg).not.toContain("NaN");
    expect(svg).not.toContain("Infinity");
  });

  it("log scale switches to decade ticks", () => {
    const series = fixtureSeries("fig6_small.csv", "mis-vs-n");
    const linear = renderFigure(series, { kind: "mis-vs-n", alpha: 0.005 });
    const log = renderFigure(series, { kind: "mis-vs-n", alpha: 0.005, logScale: true });
    expect(log).not.toBe(linear);
    // floor is alpha/2 = 0.0025 here, so decades run 0.01 .. 1
    expect(log).toContain(">0.01<");
    expect(linear).not.toContain(">0.01<");
    expect(log).toContain(">1<");
  });

  it("labels both axes for the figure kind", () => {
    const series = fixtureSeries("fig7_small.csv", "mis-vs-lambda");
    const svg = renderFigure(series, { kind: "mis-vs-lambda", alpha: 0.005 });
    expect(svg).toContain("signal eigenvalue lambda_1");
    expect(svg).toContain("mis-estimation probability");
  });
});
