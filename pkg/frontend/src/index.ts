export { CsvSchemaError, REQUIRED_COLUMNS, parseSweepCsv } from "./csv.js";
export type { SweepRow } from "./csv.js";
export {
  EmptyDataError,
  FIGURE_KINDS,
  extractSeries,
  isFigureKind,
  xAxisLabel,
  yAxisLabel,
} from "./figure.js";
export type { FigureKind, FigureSpec, Series, SeriesPoint } from "./figure.js";
export { renderFigure } from "./svg.js";
export type { RenderOptions } from "./svg.js";
export { UsageError, buildSpec, run } from "./cli.js";
