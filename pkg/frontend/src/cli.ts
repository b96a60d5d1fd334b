/** CLI: `plot --spec figure.toml` or `plot a.csv b.csv --out fig.svg [flags]`. */

import yargs from "yargs";

import { loadSpec, SPEC_DEFAULTS, validateSpec, type FigureSpec } from "./figure.js";
import { plotConvergence } from "./plot.js";

function specFromFlags(argv: {
  _: (string | number)[];
  labels?: string;
  yColumn: string;
  linearY: boolean;
  rates?: string;
  out?: string;
  format: string;
}): FigureSpec {
  if (argv.out === undefined) {
    throw new Error("provide --out PATH (or use --spec)");
  }
  return validateSpec({
    inputs: argv._.map(String),
    labels: argv.labels === undefined ? undefined : argv.labels.split(",").map((s) => s.trim()),
    yColumn: argv.yColumn as FigureSpec["yColumn"],
    logY: !argv.linearY,
    rates: argv.rates === undefined ? undefined : argv.rates.split(",").map(Number),
    output: argv.out,
    format: argv.format as FigureSpec["format"],
  });
}

export async function runCli(args: string[]): Promise<number> {
  try {
    const argv = await yargs(args)
      .usage("plot --spec figure.toml | plot CSV... --out FIG.svg [flags]")
      .option("spec", { type: "string", describe: "TOML figure spec (overrides all other flags)" })
      .option("out", { type: "string", describe: "output image path" })
      .option("labels", { type: "string", describe: "comma-separated curve labels" })
      .option("y-column", {
        type: "string",
        default: SPEC_DEFAULTS.yColumn as string,
        choices: ["epsilon", "ab"],
        describe: "trace column to plot",
      })
      .option("rates", {
        type: "string",
        describe: "comma-separated per-curve decay rates for dashed overlays",
      })
      .option("linear-y", { type: "boolean", default: false, describe: "linear y-axis instead of semi-log" })
      .option("format", {
        type: "string",
        default: SPEC_DEFAULTS.format as string,
        choices: ["svg", "png"],
      })
      .strictOptions()
      .fail((msg, err) => {
        throw err ?? new Error(msg);
      })
      .parse();

    const spec =
      argv.spec !== undefined
        ? loadSpec(argv.spec)
        : specFromFlags(argv as Parameters<typeof specFromFlags>[0]);
    const path = await plotConvergence(spec);
    console.log(`wrote ${path}`);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}
