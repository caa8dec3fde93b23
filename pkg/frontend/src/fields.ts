/**
 * Derived fields computed locally from a snapshot.
 *
 * These re-implement, read-only, the two stencils the figures need: the
 * magnetic potential (path-integrated from the edge field, anchored at
 * the first vertex) and the current density (discrete curl at cell
 * centres).  Both are pinned against the solver's own output by the
 * fixture tests; they must agree to 1e-12.
 */

import { Field, Snapshot, at } from "./snapshot.js";

/**
 * Magnetic potential A at the dual vertices: first column by
 * A[0][j+1] = A[0][j] + hy * bx[0][j], then rows by
 * A[i+1][j] = A[i][j] - hx * by[i][j].  Anchor A[0][0] = 0.
 */
export function reconstructPotential(snap: Snapshot): Field {
  const { nx, ny, hx, hy, bx, by } = snap;
  const a = new Float64Array(nx * ny);
  for (let j = 0; j + 1 < ny; j++) {
    a[j + 1] = a[j] + hy * bx.values[j];
  }
  for (let i = 0; i + 1 < nx; i++) {
    for (let j = 0; j < ny; j++) {
      a[(i + 1) * ny + j] = a[i * ny + j] - hx * by.values[i * ny + j];
    }
  }
  return { nx, ny, values: a };
}

/** Current density  J = (by[i] - by[i-1])/hx - (bx[j] - bx[j-1])/hy  at cells. */
export function currentDensity(snap: Snapshot): Field {
  const { nx, ny, hx, hy, bx, by } = snap;
  const j = new Float64Array(nx * ny);
  for (let i = 0; i < nx; i++) {
    for (let jj = 0; jj < ny; jj++) {
      j[i * ny + jj] =
        (at(by, i, jj) - at(by, i - 1, jj)) / hx -
        (at(bx, i, jj) - at(bx, i, jj - 1)) / hy;
    }
  }
  return { nx, ny, values: j };
}

export function fieldRange(f: Field): { min: number; max: number } {
  let min = Infinity;
  let max = -Infinity;
  for (const v of f.values) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
  return { min, max };
}
