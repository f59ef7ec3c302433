/**
 * CLI wrapper: sweep CSV in, SVG chart out.
 *
 * Usage:
 *   node dist/plot_sweep.js --input curves.csv --output curves.svg \
 *        [--group-by rytov_var,n_leds] [--overwrite]
 *
 * The input file is only ever read; an existing output path is refused
 * unless --overwrite is given.
 */

import { existsSync } from "node:fs";
import { readFile, writeFile } from "node:fs/promises";

import { buildSweepChart, DEFAULT_GROUP_KEYS, parseSweepCsv } from "./sweepChart.js";

export interface CliArgs {
  input: string;
  output: string;
  groupBy: readonly string[];
  overwrite: boolean;
}

export function parseArgs(argv: string[]): CliArgs {
  let input: string | undefined;
  let output: string | undefined;
  let groupBy: readonly string[] = DEFAULT_GROUP_KEYS;
  let overwrite = false;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    const next = (): string => {
      const v = argv[++i];
      if (v === undefined) throw new Error(`${arg} needs a value`);
      return v;
    };
    if (arg === "--input") input = next();
    else if (arg === "--output") output = next();
    else if (arg === "--group-by") groupBy = next().split(",").map((k) => k.trim());
    else if (arg === "--overwrite") overwrite = true;
    else throw new Error(`unknown argument: ${arg}`);
  }
  if (!input || !output) throw new Error("--input and --output are required");
  return { input, output, groupBy, overwrite };
}

export async function run(args: CliArgs): Promise<void> {
  if (existsSync(args.output) && !args.overwrite) {
    throw new Error(`refusing to overwrite ${args.output} (pass --overwrite)`);
  }
  const text = await readFile(args.input, "utf-8");
  const rows = parseSweepCsv(text);
  const svg = buildSweepChart(rows, { groupKeys: args.groupBy });
  await writeFile(args.output, svg);
  console.log(`SVG -> ${args.output} (${rows.length} rows)`);
}

const isMain = process.argv[1] !== undefined
  && import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (isMain) {
  run(parseArgs(process.argv.slice(2))).catch((err: Error) => {
    console.error(`error: ${err.message}`);
    process.exit(1);
  });
}
