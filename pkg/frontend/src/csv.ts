/** Strict reader for the CLI's CSV outputs plus the sidecar manifest. */

import * as fs from "node:fs";

export class SchemaError extends Error {}

export interface Table {
  header: string[];
  rows: number[][];
}

export function readTable(path: string): Table {
  if (!fs.existsSync(path)) {
    throw new SchemaError(`no such file: ${path}`);
  }
  const lines = fs
    .readFileSync(path, "utf8")
    .split(/\r?\n/)
    .filter((line) => line.trim().length > 0);
  if (lines.length < 2) {
    throw new SchemaError(`${path}: need a header and at least one data row`);
  }
  const header = lines[0].split(",").map((h) => h.trim());
  if (header.some((h) => h.length === 0)) {
    throw new SchemaError(`${path}: blank column name in header`);
  }
  const rows: number[][] = [];
  for (const [i, line] of lines.slice(1).entries()) {
    const parts = line.split(",");
    if (parts.length !== header.length) {
      throw new SchemaError(
        `${path}: row ${i + 1} has ${parts.length} fields, header has ${header.length}`
      );
    }
    const row = parts.map((p) => Number(p));
    if (row.some((v) => !Number.isFinite(v))) {
      throw new SchemaError(`${path}: row ${i + 1} holds a non-numeric field`);
    }
    rows.push(row);
  }
  return { header, rows };
}

export function requireColumns(table: Table, names: string[], path: string): void {
  for (const name of names) {
    if (!table.header.includes(name)) {
      throw new SchemaError(
        `${path}: missing column '${name}' (header: ${table.header.join(",")})`
      );
    }
  }
}

export function column(table: Table, name: string): number[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) throw new SchemaError(`no column '${name}'`);
  return table.rows.map((row) => row[idx]);
}

export interface Manifest {
  subcommand?: string;
  parameters?: Record<string, unknown>;
}

export function readManifest(csvPath: string): Manifest | undefined {
  const path = `${csvPath}.manifest.json`;
  if (!fs.existsSync(path)) return undefined;
  try {
    return JSON.parse(fs.readFileSync(path, "utf8")) as Manifest;
  } catch {
    return undefined;
  }
}
