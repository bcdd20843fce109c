#!/usr/bin/env node
/**
 * plot_path <path.csv> <out.png>
 *
 * Renders a t,value path CSV produced by `sqfull path`.  If the CLI's
 * manifest sits next to the CSV, its (x, H) parameters label the plot.
 */

import * as fs from "node:fs";

import { column, readManifest, readTable, requireColumns, SchemaError } from "./csv.js";
import { renderPath } from "./render.js";

export function main(argv: string[]): number {
  if (argv.length !== 2) {
    process.stderr.write("usage: plot_path <path.csv> <out.png>\n");
    return 2;
  }
  const [csvPath, pngPath] = argv;
  try {
    const table = readTable(csvPath);
    requireColumns(table, ["t", "value"], csvPath);
    const ts = column(table, "t");
    const values = column(table, "value");
    const manifest = readManifest(csvPath);
    const params = manifest?.parameters ?? {};
    const kind = typeof params["kind"] === "string" ? (params["kind"] as string) : "path";
    const annotation =
      params["x"] !== undefined && params["H"] !== undefined
        ? `x = ${params["x"]}, H = ${params["H"]}`
        : "";
    const png = renderPath(ts, values, `${kind} partial-sum path`, annotation);
    fs.writeFileSync(pngPath, png);
    process.stdout.write(`wrote ${pngPath} (${values.length} rows)\n`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`schema error: ${err.message}\n`);
      return 1;
    }
    throw err;
  }
}

if (process.argv[1] && /plot_path\.js$/.test(process.argv[1])) {
  process.exit(main(process.argv.slice(2)));
}
