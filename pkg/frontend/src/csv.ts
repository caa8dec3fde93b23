/**
 * Reader for decmhd diagnostics.csv files.
 *
 * Header-driven: columns are looked up by name so reordered or extended
 * files keep working; missing required columns are an error.
 */

import { readFileSync } from "fs";

export interface Diagnostics {
  columns: string[];
  /** column name -> values, one per logged step */
  data: Map<string, Float64Array>;
  rows: number;
}

export class CsvError extends Error {}

export function parseDiagnostics(text: string): Diagnostics {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new CsvError("diagnostics file is empty");
  }
  const columns = lines[0].split(",");
  if (!columns.includes("t")) {
    throw new CsvError(`no 't' column in header: ${lines[0]}`);
  }
  const rows = lines.length - 1;
  if (rows === 0) {
    throw new CsvError("diagnostics file has a header but no rows");
  }
  const data = new Map<string, Float64Array>(
    columns.map((name) => [name, new Float64Array(rows)]),
  );
  for (let r = 0; r < rows; r++) {
    const cells = lines[r + 1].split(",");
    if (cells.length !== columns.length) {
      throw new CsvError(
        `row ${r + 2} has ${cells.length} cells, expected ${columns.length}`,
      );
    }
    for (let c = 0; c < columns.length; c++) {
      const value = Number(cells[c]);
      if (Number.isNaN(value)) {
        throw new CsvError(`row ${r + 2}, column '${columns[c]}': ${cells[c]}`);
      }
      data.get(columns[c])![r] = value;
    }
  }
  return { columns, data, rows };
}

export function readDiagnostics(path: string): Diagnostics {
  return parseDiagnostics(readFileSync(path, "utf8"));
}

export function column(diag: Diagnostics, name: string): Float64Array {
  const values = diag.data.get(name);
  if (values === undefined) {
    throw new CsvError(`missing column '${name}'`);
  }
  return values;
}
