#!/usr/bin/env node
/**
 * Render an experiment CSV as an SVG figure.
 *
 * Usage: iiot-trustnet-plot <csv> --kind error-curve --out figure.svg
 * Exit codes: 0 success, 1 usage error, 2 schema/config error, 3 runtime error.
 */

import { existsSync } from "fs";

import yargs from "yargs";

import { SchemaError } from "./csv";
import { render } from "./render";
import { FIGURE_KINDS, isFigureKind } from "./schema";

export function main(argv: string[]): number {
  let usageError = false;
  const parser = yargs(argv)
    .usage("$0 <csv> --kind <kind> [--out <path>]")
    .command("$0 <csv>", "render one experiment CSV", (cmd) =>
      cmd.positional("csv", { type: "string", demandOption: true })
    )
    .option("kind", {
      type: "string",
      demandOption: true,
      choices: FIGURE_KINDS,
      describe: "experiment family of the input CSV",
    })
    .option("out", {
      type: "string",
      describe: "output SVG path (default: input with .svg extension)",
    })
    .strict()
    .exitProcess(false)
    .fail((message) => {
      usageError = true;
      console.error(`usage error: ${message}`);
    });

  const args = parser.parseSync();
  if (usageError) {
    return 1;
  }
  const csv = args.csv as string;
  const kind = args.kind as string;
  if (!isFigureKind(kind)) {
    console.error(`usage error: unknown figure kind ${kind}`);
    return 1;
  }
  if (!existsSync(csv)) {
    console.error(`config error: no such input file ${csv}`);
    return 2;
  }
  const out = args.out ?? csv.replace(/\.csv$/, "") + ".svg";
  try {
    const result = render({ inputCsv: csv, figureKind: kind, outputImage: out });
    console.log(`wrote ${result.outputImage} (${result.seriesCount} series)`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
      return 2;
    }
    if (err instanceof RangeError) {
      console.error(`usage error: ${err.message}`);
      return 1;
    }
    const message = err instanceof Error ? err.message : String(err);
    console.error(`runtime error: ${message}`);
    return 3;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
