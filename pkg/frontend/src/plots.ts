/**
 * The four figure kinds, each a pure function from run outputs to an
 * SVG string: conservation-error traces, field-line contours of the
 * magnetic potential, current-density colormaps, and 1D profiles of
 * the y-components along x.
 */

import { Diagnostics, column } from "./csv.js";
import { currentDensity, fieldRange, reconstructPotential } from "./fields.js";
import { diverging } from "./colormap.js";
import { isolines, spreadLevels } from "./contour.js";
import { Field, Snapshot } from "./snapshot.js";
import { Extent, SvgDocument, fmt, frame, shortNumber } from "./svg.js";

export interface PlotJob {
  kind: "traces" | "contours" | "current" | "profile";
  /** contour-level window [lo, hi]; default: spread over the data range */
  window?: [number, number];
  /** row index for profiles; default ny/2 */
  row?: number;
  title?: string;
}

const TRACE_STYLES = [
  'stroke="#c23b22" stroke-width="1.2"',
  'stroke="#1f6fb2" stroke-width="1.2"',
  'stroke="#2e8b57" stroke-width="1.2"',
];

/** Stacked |error relative to the first row| traces for the three invariants. */
export function tracesSvg(diag: Diagnostics, title = "conservation errors"): string {
  const t = column(diag, "t");
  const names: Array<[string, string]> = [
    ["e_total", "energy"],
    ["magnetic_helicity", "magnetic helicity"],
    ["cross_helicity", "cross helicity"],
  ];
  const width = 640;
  const panelH = 150;
  const doc = new SvgDocument(width, 60 + names.length * (panelH + 46));
  doc.text(width / 2, 24, title, 'text-anchor="middle" font-weight="bold" font-size="14"');
  names.forEach(([col, label], k) => {
    const series = column(diag, col);
    const ref = series[0];
    const scale = Math.abs(ref) > 0 ? Math.abs(ref) : 1;
    const err = Array.from(series, (v) => Math.abs(v - ref) / scale);
    const floor = 1e-17;
    const logErr = err.map((e) => Math.log10(Math.max(e, floor)));
    const lo = Math.floor(Math.min(...logErr, -16));
    const hi = Math.ceil(Math.max(...logErr, -15) + 0.5);
    const box = { x: 70, y: 50 + k * (panelH + 46), w: width - 100, h: panelH };
    const { sx, sy } = frame(doc, box,
      { xMin: t[0], xMax: t[t.length - 1], yMin: lo, yMax: hi },
      { x: "t", y: `log10 |d ${label}| / |ref|`, title: label });
    doc.polyline(
      Array.from(t, (tv, r) => [sx.map(tv), sy.map(logErr[r])] as [number, number]),
      TRACE_STYLES[k % TRACE_STYLES.length]);
  });
  return doc.render();
}

function snapshotExtent(snap: Snapshot): Extent {
  return { xMin: snap.x0, xMax: snap.x0 + snap.lx, yMin: snap.y0, yMax: snap.y0 + snap.ly };
}

/** Field lines: isolines of the reconstructed magnetic potential. */
export function contoursSvg(snap: Snapshot, job: PlotJob = { kind: "contours" }): string {
  const a = reconstructPotential(snap);
  const { min, max } = fieldRange(a);
  const levels = job.window
    ? spreadLevels(job.window[0], job.window[1], 10)
    : spreadLevels(min, max, 12);
  const width = 560;
  const height = 120 + (520 - 120) * (snap.ly / snap.lx);
  const doc = new SvgDocument(width, height + 90);
  const box = { x: 60, y: 40, w: width - 90, h: height };
  const { sx, sy } = frame(doc, box, snapshotExtent(snap), {
    x: "x", y: "y",
    title: job.title ?? `magnetic field lines, t = ${shortNumber(snap.t)}`,
  });
  const geom = { hx: snap.hx, hy: snap.hy, x0: snap.x0, y0: snap.y0 };
  for (const level of levels) {
    for (const [xa, ya, xb, yb] of isolines(a, level, geom)) {
      doc.line(sx.map(xa), sy.map(ya), sx.map(xb), sy.map(yb),
        'stroke="#333" stroke-width="0.8"');
    }
  }
  return doc.render();
}

/** Current-density colormap (symmetric diverging scale). */
export function currentSvg(snap: Snapshot, job: PlotJob = { kind: "current" }): string {
  const j = currentDensity(snap);
  const { min, max } = fieldRange(j);
  const amp = Math.max(Math.abs(min), Math.abs(max), 1e-300);
  const width = 560;
  const height = 120 + (520 - 120) * (snap.ly / snap.lx);
  const doc = new SvgDocument(width, height + 90);
  const box = { x: 60, y: 40, w: width - 90, h: height };
  const { sx, sy } = frame(doc, box, snapshotExtent(snap), {
    x: "x", y: "y",
    title: job.title ?? `current density, t = ${shortNumber(snap.t)} `
      + `(range ${shortNumber(min)} .. ${shortNumber(max)})`,
  });
  // one rect per cell, drawn under the frame's tick marks
  const cellW = sx.map(snap.x0 + snap.hx) - sx.map(snap.x0);
  const cellH = sy.map(snap.y0) - sy.map(snap.y0 + snap.hy);
  for (let i = 0; i < snap.nx; i++) {
    for (let jj = 0; jj < snap.ny; jj++) {
      const x = sx.map(snap.x0 + (i - 0.0) * snap.hx);
      const y = sy.map(snap.y0 + (jj + 1.0) * snap.hy);
      const v = j.values[i * snap.ny + jj] / amp;
      doc.rect(x, y, cellW + 0.5, cellH + 0.5, diverging(v));
    }
  }
  return doc.render();
}

/** x-profiles of the y-components of B and V at one row of y-edges. */
export function profileSvg(snap: Snapshot, job: PlotJob = { kind: "profile" }): string {
  const row = job.row ?? Math.floor(snap.ny / 2);
  if (row < 0 || row >= snap.ny) {
    throw new RangeError(`row ${row} outside 0..${snap.ny - 1}`);
  }
  const xs = Array.from({ length: snap.nx }, (_, i) => snap.x0 + (i + 0.5) * snap.hx);
  const by = Array.from({ length: snap.nx }, (_, i) => snap.by.values[i * snap.ny + row]);
  const vy = Array.from({ length: snap.nx }, (_, i) => snap.vy.values[i * snap.ny + row]);
  const lo = Math.min(...by, ...vy);
  const hi = Math.max(...by, ...vy);
  const pad = 0.05 * (hi - lo || 1);
  const width = 640;
  const doc = new SvgDocument(width, 330);
  const box = { x: 70, y: 40, w: width - 100, h: 230 };
  const y = snap.y0 + row * snap.hy;
  const { sx, sy } = frame(doc, box,
    { xMin: xs[0], xMax: xs[xs.length - 1], yMin: lo - pad, yMax: hi + pad },
    { x: "x", y: "B^y, V^y",
      title: job.title ?? `profiles at y = ${shortNumber(y)}, t = ${shortNumber(snap.t)}` });
  doc.polyline(xs.map((x, i) => [sx.map(x), sy.map(by[i])] as [number, number]),
    TRACE_STYLES[0]);
  doc.polyline(xs.map((x, i) => [sx.map(x), sy.map(vy[i])] as [number, number]),
    TRACE_STYLES[1]);
  doc.text(box.x + box.w - 8, box.y + 14, "B^y", `text-anchor="end" fill="#c23b22"`);
  doc.text(box.x + box.w - 8, box.y + 28, "V^y", `text-anchor="end" fill="#1f6fb2"`);
  return doc.render();
}
