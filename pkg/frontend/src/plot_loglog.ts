#!/usr/bin/env node
/**
 * plot_loglog <sweep.csv> <out.png> [xcol] [ycol]
 *
 * Scatter of a positive two-column relation on log-log axes with the OLS
 * slope drawn and annotated.  Defaults: x = first column, y = last column
 * that is not the fit column (so `sqfull variance-short --sweep` CSVs work
 * unmodified).  The fitted slope prints on stdout at full precision.
 */

import * as fs from "node:fs";

import { column, readTable, requireColumns, SchemaError } from "./csv.js";
import { logLogFit } from "./regression.js";
import { renderLogLog } from "./render.js";

export function main(argv: string[]): number {
  if (argv.length < 2 || argv.length > 4) {
    process.stderr.write("usage: plot_loglog <sweep.csv> <out.png> [xcol] [ycol]\n");
    return 2;
  }
  const [csvPath, pngPath, xcolArg, ycolArg] = argv;
  try {
    const table = readTable(csvPath);
    const xcol = xcolArg ?? table.header[0];
    const defaultY = table.header.filter((h) => h !== "fit_exponent").at(-1) ?? table.header[0];
    const ycol = ycolArg ?? defaultY;
    requireColumns(table, [xcol, ycol], csvPath);
    const xs = column(table, xcol);
    const ys = column(table, ycol);
    if (xs.length < 3) {
      throw new SchemaError(`${csvPath}: need at least 3 rows for a fit`);
    }
    if (xs.some((v) => v <= 0) || ys.some((v) => v <= 0)) {
      throw new SchemaError(`${csvPath}: log-log plot needs positive ${xcol} and ${ycol}`);
    }
    const fit = logLogFit(xs, ys);
    const png = renderLogLog(xs, ys, fit, xcol, ycol, `${ycol} vs ${xcol}`);
    fs.writeFileSync(pngPath, png);
    process.stdout.write(`wrote ${pngPath}\nslope = ${fit.slope.toPrecision(12)}\n`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`schema error: ${err.message}\n`);
      return 1;
    }
    throw err;
  }
}

if (process.argv[1] && /plot_loglog\.js$/.test(process.argv[1])) {
  process.exit(main(process.argv.slice(2)));
}
