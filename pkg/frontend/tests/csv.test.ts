import { readFileSync } from "node:fs";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { CsvFormatError, parseAnyCsv, parseSummaryCsv, parseTraceCsv } from "../src/csv.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));

const TRACE = `# algorithm=bistochastic
# converged=1
round,epsilon,ab
0,2.0,2.6666666666666665
1,1.25,1.1
2,0.5,0.25
`;

const TRACE_NO_AB = `round,epsilon,ab
0,2.0,
1,0.0,
`;

describe("parseTraceCsv", () => {
  it("reads metadata, rounds, and both series", () => {
    const t = parseTraceCsv(TRACE, "t.csv");
    expect(t.meta.algorithm).toBe("bistochastic");
    expect(t.rounds).toEqual([0, 1, 2]);
    expect(t.epsilon).toEqual([2.0, 1.25, 0.5]);
    expect(t.ab).toEqual([2.6666666666666665, 1.1, 0.25]);
  });

  it("keeps full float precision", () => {
    const t = parseTraceCsv(TRACE, "t.csv");
    expect(t.ab![0]).toBe(8 / 3);
  });

  it("treats an all-empty ab column as absent", () => {
    expect(parseTraceCsv(TRACE_NO_AB, "t.csv").ab).toBeNull();
  });

  it("rejects a missing column", () => {
    expect(() => parseTraceCsv("round,epsilon\n0,1.0\n", "t.csv")).toThrow(/missing column "ab"/);
  });

  it("rejects non-numeric cells", () => {
    expect(() => parseTraceCsv("round,epsilon,ab\n0,oops,\n", "t.csv")).toThrow(CsvFormatError);
  });

  it("rejects non-contiguous rounds", () => {
    expect(() => parseTraceCsv("round,epsilon,ab\n0,1.0,\n2,0.5,\n", "t.csv")).toThrow(
      /non-contiguous round index 2/,
    );
  });

  it("rejects a gap in the ab column", () => {
    expect(() => parseTraceCsv("round,epsilon,ab\n0,1.0,2.0\n1,0.5,\n", "t.csv")).toThrow(/gap/);
  });

  it("rejects empty input and header-only input", () => {
    expect(() => parseTraceCsv("", "t.csv")).toThrow(/no header/);
    expect(() => parseTraceCsv("round,epsilon,ab\n", "t.csv")).toThrow(/no data rows/);
  });

  it("parses a real trace written by the simulator CLI", () => {
    const text = readFileSync(join(FIXTURES, "beta0.5.csv"), "utf8");
    const t = parseTraceCsv(text, "beta0.5.csv");
    expect(t.meta.algorithm).toBe("balance");
    expect(t.epsilon[0]).toBe(2.0);
    expect(t.epsilon[t.epsilon.length - 1]).toBeLessThanOrEqual(1e-10);
    expect(t.ab).toBeNull();
  });
});

describe("parseSummaryCsv", () => {
  const SUMMARY = `round,algo1(beta=0.5),baseline
0,10.0,10.0
1,5.9,5.0
`;

  it("reads labels and per-algorithm columns", () => {
    const s = parseSummaryCsv(SUMMARY, "s.csv");
    expect(s.labels).toEqual(["algo1(beta=0.5)", "baseline"]);
    expect(s.rounds).toEqual([0, 1]);
    expect(s.series).toEqual([
      [10.0, 5.9],
      [10.0, 5.0],
    ]);
  });

  it("rejects a ragged row", () => {
    expect(() => parseSummaryCsv("round,a,b\n0,1.0\n", "s.csv")).toThrow(/2 cells/);
  });

  it("rejects a header without labels", () => {
    expect(() => parseSummaryCsv("round\n0\n", "s.csv")).toThrow(/expected header/);
  });

  it("parses a real summary written by the simulator CLI", () => {
    const text = readFileSync(join(FIXTURES, "summary.csv"), "utf8");
    const s = parseSummaryCsv(text, "summary.csv");
    expect(s.labels).toEqual(["algo1(beta=0.5)", "baseline"]);
    expect(s.series[0][0]).toBeGreaterThan(0);
  });
});

describe("parseAnyCsv", () => {
  it("detects each schema by its header", () => {
    expect(parseAnyCsv(TRACE, "t.csv").kind).toBe("trace");
    expect(parseAnyCsv("round,a,b\n0,1.0,2.0\n", "s.csv").kind).toBe("summary");
  });
});
