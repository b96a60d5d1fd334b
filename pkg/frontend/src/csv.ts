/**
 * Parsers for the two CSV schemas the experiment tooling emits:
 *
 * - trace CSV: optional `# key=value` metadata comment lines, then a
 *   `round,epsilon,ab` header and one row per round (the `ab` cell may
 *   be empty throughout);
 * - summary CSV: a `round,<label>[,<label>...]` header and one mean
 *   value per algorithm per round.
 */

export class CsvFormatError extends Error {}

export interface Trace {
  kind: "trace";
  meta: Record<string, string>;
  rounds: number[];
  epsilon: number[];
  /** Present only for runs that track the doubly-stochastic gap. */
  ab: number[] | null;
}

export interface Summary {
  kind: "summary";
  labels: string[];
  rounds: number[];
  /** series[i] is the per-round column for labels[i]. */
  series: number[][];
}

function splitRows(text: string): { meta: Record<string, string>; rows: string[][] } {
  const meta: Record<string, string> = {};
  const rows: string[][] = [];
  for (const raw of text.split(/\r?\n/)) {
    const line = raw.trim();
    if (line === "") continue;
    if (line.startsWith("#")) {
      const body = line.replace(/^#+\s*/, "");
      const eq = body.indexOf("=");
      if (eq > 0) meta[body.slice(0, eq).trim()] = body.slice(eq + 1).trim();
      continue;
    }
    rows.push(line.split(",").map((cell) => cell.trim()));
  }
  return { meta, rows };
}

function toNumber(cell: string, source: string, context: string): number {
  const value = Number(cell);
  if (cell === "" || !Number.isFinite(value)) {
    throw new CsvFormatError(`${source}: non-numeric ${context} cell ${JSON.stringify(cell)}`);
  }
  return value;
}

export function parseTraceCsv(text: string, source: string): Trace {
  const { meta, rows } = splitRows(text);
  if (rows.length === 0) throw new CsvFormatError(`${source}: no header row found`);
  const header = rows[0];
  for (const col of ["round", "epsilon", "ab"]) {
    if (!header.includes(col)) {
      throw new CsvFormatError(`${source}: missing column ${JSON.stringify(col)}`);
    }
  }
  const at = {
    round: header.indexOf("round"),
    epsilon: header.indexOf("epsilon"),
    ab: header.indexOf("ab"),
  };
  const rounds: number[] = [];
  const epsilon: number[] = [];
  const ab: number[] = [];
  for (const row of rows.slice(1)) {
    const k = toNumber(row[at.round] ?? "", source, "round");
    if (k !== rounds.length) {
      throw new CsvFormatError(`${source}: non-contiguous round index ${k}`);
    }
    rounds.push(k);
    epsilon.push(toNumber(row[at.epsilon] ?? "", source, "epsilon"));
    const abCell = row[at.ab] ?? "";
    if (abCell !== "") {
      ab.push(toNumber(abCell, source, "ab"));
    } else if (ab.length > 0) {
      throw new CsvFormatError(`${source}: ab column has a gap at round ${k}`);
    }
  }
  if (rounds.length === 0) throw new CsvFormatError(`${source}: trace has no data rows`);
  return { kind: "trace", meta, rounds, epsilon, ab: ab.length > 0 ? ab : null };
}

export function parseSummaryCsv(text: string, source: string): Summary {
  const { rows } = splitRows(text);
  if (rows.length === 0) throw new CsvFormatError(`${source}: no header row found`);
  const header = rows[0];
  if (header[0] !== "round" || header.length < 2) {
    throw new CsvFormatError(`${source}: expected header "round,<label>,...", got "${header.join(",")}"`);
  }
  const labels = header.slice(1);
  const rounds: number[] = [];
  const series: number[][] = labels.map(() => []);
  for (const row of rows.slice(1)) {
    const k = toNumber(row[0] ?? "", source, "round");
    if (k !== rounds.length) {
      throw new CsvFormatError(`${source}: non-contiguous round index ${k}`);
    }
    if (row.length !== header.length) {
      throw new CsvFormatError(`${source}: row for round ${k} has ${row.length} cells, header has ${header.length}`);
    }
    rounds.push(k);
    labels.forEach((label, i) => series[i].push(toNumber(row[i + 1], source, label)));
  }
  if (rounds.length === 0) throw new CsvFormatError(`${source}: summary has no data rows`);
  return { kind: "summary", labels, rounds, series };
}

/** Parse either schema, deciding by the header row. */
export function parseAnyCsv(text: string, source: string): Trace | Summary {
  const { rows } = splitRows(text);
  if (rows.length === 0) throw new CsvFormatError(`${source}: no header row found`);
  const header = rows[0];
  const isTrace =
    header.includes("round") && header.includes("epsilon") && header.includes("ab");
  return isTrace ? parseTraceCsv(text, source) : parseSummaryCsv(text, source);
}
