import { describe, expect, it } from "vitest";

import { FigureSpecError, specFromToml, validateSpec, type FigureSpec } from "../src/figure.js";

function spec(overrides: Partial<FigureSpec> = {}): FigureSpec {
  return {
    inputs: ["a.csv"],
    yColumn: "epsilon",
    logY: true,
    output: "fig.svg",
    format: "svg",
    ...overrides,
  };
}

describe("validateSpec", () => {
  it("accepts a minimal spec", () => {
    expect(validateSpec(spec())).toBeTruthy();
  });

  it("requires at least one input", () => {
    expect(() => validateSpec(spec({ inputs: [] }))).toThrow(/at least one input/);
  });

  it("requires unique labels", () => {
    expect(() => validateSpec(spec({ labels: ["a", "a"] }))).toThrow(/unique/);
  });

  it("requires non-negative finite rates", () => {
    expect(() => validateSpec(spec({ rates: [-0.1] }))).toThrow(/>= 0/);
    expect(() => validateSpec(spec({ rates: [NaN] }))).toThrow(FigureSpecError);
    expect(validateSpec(spec({ rates: [0, 0.518] }))).toBeTruthy();
  });

  it("restricts y-column and format", () => {
    expect(() => validateSpec(spec({ yColumn: "gamma" as never }))).toThrow(/y-column/);
    expect(() => validateSpec(spec({ format: "pdf" as never }))).toThrow(/format/);
  });

  it("requires an output path", () => {
    expect(() => validateSpec(spec({ output: "" }))).toThrow(/output/);
  });
});

describe("specFromToml", () => {
  it("parses a full spec", () => {
    const s = specFromToml(
      `inputs = ["a.csv", "b.csv"]
labels = ["slow", "fast"]
y_column = "ab"
log_y = false
rates = [0.1204, 0.518]
output = "fig.png"
format = "png"
`,
      "figure.toml",
    );
    expect(s.inputs).toEqual(["a.csv", "b.csv"]);
    expect(s.labels).toEqual(["slow", "fast"]);
    expect(s.yColumn).toBe("ab");
    expect(s.logY).toBe(false);
    expect(s.rates).toEqual([0.1204, 0.518]);
    expect(s.format).toBe("png");
  });

  it("applies defaults: epsilon, log-y, svg", () => {
    const s = specFromToml(`inputs = ["a.csv"]\noutput = "fig.svg"\n`, "figure.toml");
    expect(s.yColumn).toBe("epsilon");
    expect(s.logY).toBe(true);
    expect(s.format).toBe("svg");
  });

  it("rejects unknown keys, missing keys, and bad TOML", () => {
    expect(() => specFromToml(`inputs = ["a.csv"]\noutput = "f.svg"\ncolor = "red"\n`, "t")).toThrow(
      /unknown spec key "color"/,
    );
    expect(() => specFromToml(`output = "f.svg"\n`, "t")).toThrow(/"inputs" is required/);
    expect(() => specFromToml(`inputs = ["a.csv"]\n`, "t")).toThrow(/"output"/);
    expect(() => specFromToml(`inputs = [not toml`, "t")).toThrow(/invalid TOML/);
    expect(() => specFromToml(`inputs = "a.csv"\noutput = "f.svg"\n`, "t")).toThrow(
      /array of strings/,
    );
  });
});
