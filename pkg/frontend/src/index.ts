export { CsvFormatError, parseAnyCsv, parseSummaryCsv, parseTraceCsv } from "./csv.js";
export type { Summary, Trace } from "./csv.js";
export { FigureSpecError, loadSpec, specFromToml, validateSpec } from "./figure.js";
export type { FigureSpec } from "./figure.js";
export { buildCurves, plotConvergence } from "./plot.js";
export { renderFigure } from "./svg.js";
export type { Curve } from "./svg.js";
