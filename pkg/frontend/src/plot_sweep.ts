#!/usr/bin/env node
/** Command-line entry point: render a sweep CSV to a PNG file.
 *
 * Usage: plot_sweep <input.csv> <output.png>
 */

import { readFileSync, writeFileSync } from "node:fs";

import { renderSweep } from "./chart";
import { parseSweepCsv } from "./csv";

export function main(argv: string[]): number {
  if (argv.length !== 2) {
    console.error("usage: plot_sweep <input.csv> <output.png>");
    return 2;
  }
  const [input, output] = argv;
  try {
    const table = parseSweepCsv(readFileSync(input, "utf8"));
    writeFileSync(output, renderSweep(table));
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
