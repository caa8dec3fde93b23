/**
 * Minimal deterministic SVG assembly: fixed float formatting, no DOM.
 */

export interface Extent {
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

/** Fixed-precision numbers so output bytes are reproducible. */
export function fmt(x: number): string {
  if (!Number.isFinite(x)) return "0";
  const s = x.toPrecision(8);
  return s.includes(".") || s.includes("e")
    ? s.replace(/(\.\d*?)0+(?=e|$)/, "$1").replace(/\.(?=e|$)/, "")
    : s;
}

export class Scale {
  constructor(
    readonly d0: number, readonly d1: number,
    readonly r0: number, readonly r1: number,
  ) {}

  map(x: number): number {
    if (this.d1 === this.d0) return 0.5 * (this.r0 + this.r1);
    return this.r0 + ((x - this.d0) / (this.d1 - this.d0)) * (this.r1 - this.r0);
  }

  /** 5-ish round tick positions across the domain. */
  ticks(count = 5): number[] {
    const span = this.d1 - this.d0;
    if (span <= 0) return [this.d0];
    const step = Math.pow(10, Math.floor(Math.log10(span / count)));
    const err = (span / count) / step;
    const mult = err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1;
    const s = mult * step;
    const out: number[] = [];
    for (let v = Math.ceil(this.d0 / s) * s; v <= this.d1 + 1e-12 * span; v += s) {
      out.push(Math.abs(v) < 1e-12 * span ? 0 : v);
    }
    return out;
  }
}

export class SvgDocument {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {}

  add(element: string): void {
    this.parts.push(element);
  }

  line(x1: number, y1: number, x2: number, y2: number, style: string): void {
    this.add(`<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ${style}/>`);
  }

  polyline(points: Array<[number, number]>, style: string): void {
    const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.add(`<polyline fill="none" ${style} points="${pts}"/>`);
  }

  rect(x: number, y: number, w: number, h: number, fill: string): void {
    this.add(`<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"/>`);
  }

  text(x: number, y: number, content: string, style = ""): void {
    this.add(`<text x="${fmt(x)}" y="${fmt(y)}" ${style}>${escapeXml(content)}</text>`);
  }

  render(): string {
    return [
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" `
      + `viewBox="0 0 ${this.width} ${this.height}" font-family="sans-serif" font-size="11">`,
      `<rect x="0" y="0" width="${this.width}" height="${this.height}" fill="white"/>`,
      ...this.parts,
      "</svg>",
      "",
    ].join("\n");
  }
}

export function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

const AXIS = 'stroke="#222" stroke-width="1"';

/** Draw a plot frame with ticks and labels; returns the data scales. */
export function frame(
  doc: SvgDocument,
  box: { x: number; y: number; w: number; h: number },
  extent: Extent,
  labels: { x?: string; y?: string; title?: string },
): { sx: Scale; sy: Scale } {
  const sx = new Scale(extent.xMin, extent.xMax, box.x, box.x + box.w);
  const sy = new Scale(extent.yMin, extent.yMax, box.y + box.h, box.y);
  doc.line(box.x, box.y + box.h, box.x + box.w, box.y + box.h, AXIS);
  doc.line(box.x, box.y, box.x, box.y + box.h, AXIS);
  for (const t of sx.ticks()) {
    const px = sx.map(t);
    doc.line(px, box.y + box.h, px, box.y + box.h + 4, AXIS);
    doc.text(px, box.y + box.h + 16, shortNumber(t), 'text-anchor="middle"');
  }
  for (const t of sy.ticks()) {
    const py = sy.map(t);
    doc.line(box.x - 4, py, box.x, py, AXIS);
    doc.text(box.x - 7, py + 3, shortNumber(t), 'text-anchor="end"');
  }
  if (labels.x) {
    doc.text(box.x + box.w / 2, box.y + box.h + 32, labels.x, 'text-anchor="middle"');
  }
  if (labels.y) {
    doc.text(box.x - 46, box.y + box.h / 2, labels.y,
      `text-anchor="middle" transform="rotate(-90 ${fmt(box.x - 46)} ${fmt(box.y + box.h / 2)})"`);
  }
  if (labels.title) {
    doc.text(box.x + box.w / 2, box.y - 6, labels.title,
      'text-anchor="middle" font-weight="bold"');
  }
  return { sx, sy };
}

export function shortNumber(x: number): string {
  if (x === 0) return "0";
  const ax = Math.abs(x);
  if (ax >= 1e4 || ax < 1e-3) return x.toExponential(1).replace("e-", "e-").replace("e+", "e");
  return String(Math.round(x * 1e6) / 1e6);
}
