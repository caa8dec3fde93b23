/**
 * Marching-squares isolines on a vertex-sampled scalar field.
 *
 * Works on the (nx, ny) grid with physical vertex coordinates
 * (x0 + i*hx, y0 + j*hy); cells whose corners straddle the level
 * contribute one or two segments with linear interpolation.  The wrap
 * seam is skipped (potentials may carry a sawtooth branch cut there),
 * so lines are drawn on the [0, nx-1] x [0, ny-1] vertex patch.
 */

import { Field } from "./snapshot.js";

export type Segment = [number, number, number, number];

export function isolines(
  field: Field,
  level: number,
  geom: { hx: number; hy: number; x0: number; y0: number },
): Segment[] {
  const { nx, ny, values } = field;
  const segments: Segment[] = [];
  const v = (i: number, j: number) => values[i * ny + j] - level;
  const px = (i: number) => geom.x0 + i * geom.hx;
  const py = (j: number) => geom.y0 + j * geom.hy;

  for (let i = 0; i + 1 < nx; i++) {
    for (let j = 0; j + 1 < ny; j++) {
      const bl = v(i, j);
      const br = v(i + 1, j);
      const tr = v(i + 1, j + 1);
      const tl = v(i, j + 1);
      let caseId = 0;
      if (bl > 0) caseId |= 1;
      if (br > 0) caseId |= 2;
      if (tr > 0) caseId |= 4;
      if (tl > 0) caseId |= 8;
      if (caseId === 0 || caseId === 15) continue;

      // edge crossings by linear interpolation
      const bottom = (): [number, number] =>
        [px(i) + geom.hx * frac(bl, br), py(j)];
      const top = (): [number, number] =>
        [px(i) + geom.hx * frac(tl, tr), py(j + 1)];
      const left = (): [number, number] =>
        [px(i), py(j) + geom.hy * frac(bl, tl)];
      const right = (): [number, number] =>
        [px(i + 1), py(j) + geom.hy * frac(br, tr)];

      const emit = (a: [number, number], b: [number, number]) =>
        segments.push([a[0], a[1], b[0], b[1]]);

      switch (caseId) {
        case 1: case 14: emit(left(), bottom()); break;
        case 2: case 13: emit(bottom(), right()); break;
        case 3: case 12: emit(left(), right()); break;
        case 4: case 11: emit(right(), top()); break;
        case 6: case 9: emit(bottom(), top()); break;
        case 7: case 8: emit(left(), top()); break;
        case 5:  emit(left(), bottom()); emit(right(), top()); break;
        case 10: emit(bottom(), right()); emit(left(), top()); break;
      }
    }
  }
  return segments;
}

function frac(a: number, b: number): number {
  const d = b - a;
  if (d === 0) return 0.5;
  const t = -a / d;
  return Math.max(0, Math.min(1, t));
}

/** Evenly spaced levels across [min, max], excluding the exact extremes. */
export function spreadLevels(min: number, max: number, count: number): number[] {
  const out: number[] = [];
  for (let k = 1; k <= count; k++) {
    out.push(min + ((max - min) * k) / (count + 1));
  }
  return out;
}
