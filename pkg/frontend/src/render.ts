/**
 * Deterministic plot rendering: fixed canvas size, fixed style, no clock or
 * randomness anywhere, so the same table yields byte-identical PNGs.
 */

import { BLACK, BLUE, GREY, Raster, RED, WHITE } from "./canvas.js";
import { encodePng } from "./png.js";
import { LogLogFit } from "./regression.js";

export const WIDTH = 960;
export const HEIGHT = 560;
const MARGIN = { left: 84, right: 28, top: 46, bottom: 58 } as const;

interface Extent {
  lo: number;
  hi: number;
}

function padded(values: number[]): Extent {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  const pad = (hi - lo) * 0.04;
  return { lo: lo - pad, hi: hi + pad };
}

function ticks(extent: Extent, target = 6): number[] {
  const span = extent.hi - extent.lo;
  const raw = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  }
  const out: number[] = [];
  for (let v = Math.ceil(extent.lo / step) * step; v <= extent.hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

function tickLabel(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e5 || a < 1e-3) {
    return v.toExponential(1).replace("e+", "e");
  }
  const text = v.toPrecision(4);
  return text.includes(".") ? text.replace(/\.?0+$/, "") : text;
}

class Frame {
  constructor(
    readonly raster: Raster,
    readonly xExtent: Extent,
    readonly yExtent: Extent
  ) {}

  px(x: number): number {
    const w = WIDTH - MARGIN.left - MARGIN.right;
    return MARGIN.left + ((x - this.xExtent.lo) / (this.xExtent.hi - this.xExtent.lo)) * w;
  }

  py(y: number): number {
    const h = HEIGHT - MARGIN.top - MARGIN.bottom;
    return HEIGHT - MARGIN.bottom - ((y - this.yExtent.lo) / (this.yExtent.hi - this.yExtent.lo)) * h;
  }
}

function drawAxes(frame: Frame, xLabel: string, yLabel: string, title: string): void {
  const r = frame.raster;
  for (const tx of ticks(frame.xExtent)) {
    const px = Math.round(frame.px(tx));
    r.line(px, MARGIN.top, px, HEIGHT - MARGIN.bottom, GREY);
    const label = tickLabel(tx);
    r.text(px - Raster.textWidth(label) / 2, HEIGHT - MARGIN.bottom + 8, label, BLACK);
  }
  for (const ty of ticks(frame.yExtent)) {
    const py = Math.round(frame.py(ty));
    r.line(MARGIN.left, py, WIDTH - MARGIN.right, py, GREY);
    const label = tickLabel(ty);
    r.text(MARGIN.left - 10 - Raster.textWidth(label), py - 3, label, BLACK);
  }
  // frame box
  r.line(MARGIN.left, MARGIN.top, WIDTH - MARGIN.right, MARGIN.top, BLACK);
  r.line(MARGIN.left, HEIGHT - MARGIN.bottom, WIDTH - MARGIN.right, HEIGHT - MARGIN.bottom, BLACK);
  r.line(MARGIN.left, MARGIN.top, MARGIN.left, HEIGHT - MARGIN.bottom, BLACK);
  r.line(WIDTH - MARGIN.right, MARGIN.top, WIDTH - MARGIN.right, HEIGHT - MARGIN.bottom, BLACK);
  r.text(
    (MARGIN.left + WIDTH - MARGIN.right) / 2 - Raster.textWidth(xLabel) / 2,
    HEIGHT - MARGIN.bottom + 28,
    xLabel,
    BLACK
  );
  r.text(8, MARGIN.top - 24, yLabel, BLACK);
  r.text(MARGIN.left, MARGIN.top - 24, title, BLACK, 2);
}

export function renderPath(
  ts: number[],
  values: number[],
  title: string,
  annotation: string
): Buffer {
  const raster = new Raster(WIDTH, HEIGHT, WHITE);
  const frame = new Frame(raster, padded(ts), padded(values));
  drawAxes(frame, "t", "value", title);
  for (let i = 1; i < ts.length; i++) {
    raster.line(frame.px(ts[i - 1]), frame.py(values[i - 1]), frame.px(ts[i]), frame.py(values[i]), BLUE);
  }
  if (annotation) {
    raster.text(MARGIN.left + 10, MARGIN.top + 10, annotation, BLACK);
  }
  return encodePng(WIDTH, HEIGHT, raster.pixels);
}

export function slopeAnnotation(fit: LogLogFit): string {
  return `slope = ${fit.slope.toFixed(6)}`;
}

export function renderLogLog(
  xs: number[],
  ys: number[],
  fit: LogLogFit,
  xLabel: string,
  yLabel: string,
  title: string
): Buffer {
  const raster = new Raster(WIDTH, HEIGHT, WHITE);
  const lx = xs.map(Math.log10);
  const ly = ys.map(Math.log10);
  const frame = new Frame(raster, padded(lx), padded(ly));
  drawAxes(frame, `log10 ${xLabel}`, `log10 ${yLabel}`, title);
  // fitted line in natural-log space mapped through log10
  const L = Math.LN10;
  const x0 = frame.xExtent.lo;
  const x1 = frame.xExtent.hi;
  const yAt = (x10: number) => (fit.intercept + fit.slope * (x10 * L)) / L;
  raster.line(frame.px(x0), frame.py(yAt(x0)), frame.px(x1), frame.py(yAt(x1)), RED);
  for (let i = 0; i < lx.length; i++) {
    raster.fillRect(Math.round(frame.px(lx[i])) - 2, Math.round(frame.py(ly[i])) - 2, 5, 5, BLUE);
  }
  raster.text(MARGIN.left + 10, MARGIN.top + 10, slopeAnnotation(fit), RED, 2);
  return encodePng(WIDTH, HEIGHT, raster.pixels);
}
