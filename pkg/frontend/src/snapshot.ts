/**
 * Reader for DECMHD01 binary field snapshots.
 *
 * Layout (little-endian): 8-byte magic "DECMHD01", u32 nx, u32 ny,
 * f64 lx, ly, x0, y0, t, then five row-major f64 arrays of shape
 * (nx, ny): v_x, v_y, b_x, b_y, p.
 */

import { readFileSync } from "fs";

export const MAGIC = "DECMHD01";

/** Row-major (nx, ny) scalar field; index (i, j) -> i * ny + j. */
export interface Field {
  nx: number;
  ny: number;
  values: Float64Array;
}

export interface Snapshot {
  nx: number;
  ny: number;
  lx: number;
  ly: number;
  x0: number;
  y0: number;
  t: number;
  hx: number;
  hy: number;
  vx: Field;
  vy: Field;
  bx: Field;
  by: Field;
  p: Field;
}

export class SnapshotError extends Error {}

export function at(f: Field, i: number, j: number): number {
  const ii = ((i % f.nx) + f.nx) % f.nx;
  const jj = ((j % f.ny) + f.ny) % f.ny;
  return f.values[ii * f.ny + jj];
}

export function parseSnapshot(buffer: Buffer): Snapshot {
  if (buffer.length < 56) {
    throw new SnapshotError(`file too short (${buffer.length} bytes)`);
  }
  const magic = buffer.subarray(0, 8).toString("latin1");
  if (magic !== MAGIC) {
    throw new SnapshotError(`bad magic ${JSON.stringify(magic)}, expected ${MAGIC}`);
  }
  const nx = buffer.readUInt32LE(8);
  const ny = buffer.readUInt32LE(12);
  const lx = buffer.readDoubleLE(16);
  const ly = buffer.readDoubleLE(24);
  const x0 = buffer.readDoubleLE(32);
  const y0 = buffer.readDoubleLE(40);
  const t = buffer.readDoubleLE(48);
  const n = nx * ny;
  const expected = 56 + 5 * n * 8;
  if (buffer.length !== expected) {
    throw new SnapshotError(
      `expected ${expected} bytes for ${nx}x${ny}, got ${buffer.length}`,
    );
  }
  const fields: Field[] = [];
  for (let k = 0; k < 5; k++) {
    const values = new Float64Array(n);
    const base = 56 + k * n * 8;
    for (let m = 0; m < n; m++) {
      values[m] = buffer.readDoubleLE(base + 8 * m);
    }
    fields.push({ nx, ny, values });
  }
  return {
    nx, ny, lx, ly, x0, y0, t,
    hx: lx / nx,
    hy: ly / ny,
    vx: fields[0], vy: fields[1], bx: fields[2], by: fields[3], p: fields[4],
  };
}

export function readSnapshot(path: string): Snapshot {
  return parseSnapshot(readFileSync(path));
}
