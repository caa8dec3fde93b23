/**
 * Fixed diverging blue-white-red colormap for signed fields.
 */

function hex2(v: number): string {
  const clamped = Math.max(0, Math.min(255, Math.round(v)));
  return clamped.toString(16).padStart(2, "0");
}

/** value in [-1, 1] -> css color, blue negative, red positive. */
export function diverging(v: number): string {
  const t = Math.max(-1, Math.min(1, v));
  let r: number, g: number, b: number;
  if (t < 0) {
    const s = 1 + t;                 // 0 at -1 .. 1 at 0
    r = 40 + 215 * s;
    g = 60 + 195 * s;
    b = 150 + 105 * s;
  } else {
    const s = 1 - t;
    r = 170 + 85 * s;
    g = 35 + 220 * s;
    b = 40 + 215 * s;
  }
  return `#${hex2(r)}${hex2(g)}${hex2(b)}`;
}
