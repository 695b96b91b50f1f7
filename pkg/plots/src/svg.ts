// Hand-rolled SVG chart builder: linear/log scales, axes, lines, bars,
// scatter marks and mean+-std bands. No DOM, no dependencies; output is a
// plain SVG string.

export interface ChartOptions {
  width?: number;
  height?: number;
  title?: string;
  xLabel?: string;
  yLabel?: string;
  xDomain: [number, number];
  yDomain: [number, number];
  logX?: boolean;
  logY?: boolean;
}

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#17becf",
  "#8c564b",
  "#e377c2",
];

const MARGIN = { top: 34, right: 16, bottom: 46, left: 62 };

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function niceTicks(lo: number, hi: number, count = 6): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const step0 = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = span / (count * step0);
  const step = step0 * (err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1);
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

export function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(lo)); Math.pow(10, e) <= hi * (1 + 1e-9); e++) {
    ticks.push(Math.pow(10, e));
  }
  return ticks.length > 0 ? ticks : [lo, hi];
}

function fmtTick(v: number): string {
  if (v === 0) return "0";
  const abs = Math.abs(v);
  if (abs >= 1e4 || abs < 1e-3) return v.toExponential(0).replace("e", "e");
  return Number(v.toPrecision(4)).toString();
}

export class Chart {
  private readonly parts: string[] = [];
  private readonly width: number;
  private readonly height: number;
  private readonly opts: ChartOptions;
  private readonly legendEntries: { label: string; color: string }[] = [];

  constructor(opts: ChartOptions) {
    this.opts = opts;
    this.width = opts.width ?? 560;
    this.height = opts.height ?? 380;
    if (opts.logY && opts.yDomain[0] <= 0) {
      throw new Error("log-scale y axis needs a positive domain");
    }
    if (opts.logX && opts.xDomain[0] <= 0) {
      throw new Error("log-scale x axis needs a positive domain");
    }
  }

  x(value: number): number {
    const [lo, hi] = this.opts.xDomain;
    const plotW = this.width - MARGIN.left - MARGIN.right;
    let t: number;
    if (this.opts.logX) {
      t = (Math.log10(value) - Math.log10(lo)) / (Math.log10(hi) - Math.log10(lo));
    } else {
      t = hi > lo ? (value - lo) / (hi - lo) : 0.5;
    }
    return MARGIN.left + t * plotW;
  }

  y(value: number): number {
    const [lo, hi] = this.opts.yDomain;
    const plotH = this.height - MARGIN.top - MARGIN.bottom;
    let t: number;
    if (this.opts.logY) {
      t = (Math.log10(value) - Math.log10(lo)) / (Math.log10(hi) - Math.log10(lo));
    } else {
      t = hi > lo ? (value - lo) / (hi - lo) : 0.5;
    }
    return this.height - MARGIN.bottom - t * plotH;
  }

  raw(fragment: string): void {
    this.parts.push(fragment);
  }

  line(points: [number, number][], color: string, dash = ""): void {
    if (points.length === 0) return;
    const path = points.map(([px, py]) => `${this.x(px).toFixed(2)},${this.y(py).toFixed(2)}`).join(" ");
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<polyline points="${path}" fill="none" stroke="${color}" stroke-width="1.8"${dashAttr}/>`,
    );
  }

  scatter(points: [number, number][], color: string, radius = 3, filled = true): void {
    for (const [px, py] of points) {
      const fill = filled ? color : "none";
      this.parts.push(
        `<circle cx="${this.x(px).toFixed(2)}" cy="${this.y(py).toFixed(2)}" r="${radius}" ` +
          `fill="${fill}" stroke="${color}" stroke-width="1.2"/>`,
      );
    }
  }

  /** Shaded band between lower and upper values along shared x positions. */
  band(xs: number[], lower: number[], upper: number[], color: string): void {
    if (xs.length === 0) return;
    const fwd = xs.map((v, k) => `${this.x(v).toFixed(2)},${this.y(upper[k]!).toFixed(2)}`);
    const back = [...xs.keys()].reverse().map(
      (k) => `${this.x(xs[k]!).toFixed(2)},${this.y(lower[k]!).toFixed(2)}`,
    );
    this.parts.push(
      `<polygon points="${[...fwd, ...back].join(" ")}" fill="${color}" opacity="0.18"/>`,
    );
  }

  bar(xLo: number, xHi: number, value: number, color: string): void {
    const x0 = this.x(xLo);
    const x1 = this.x(xHi);
    const yBase = this.y(this.opts.logY ? this.opts.yDomain[0] : Math.max(0, this.opts.yDomain[0]));
    const yTop = this.y(value);
    const h = Math.max(yBase - yTop, 0);
    this.parts.push(
      `<rect x="${x0.toFixed(2)}" y="${yTop.toFixed(2)}" width="${Math.max(x1 - x0 - 0.5, 0.5).toFixed(2)}" ` +
        `height="${h.toFixed(2)}" fill="${color}" opacity="0.85"/>`,
    );
  }

  errorBar(px: number, mean: number, sd: number, color: string): void {
    const cx = this.x(px).toFixed(2);
    const yLo = this.y(Math.max(mean - sd, this.opts.logY ? this.opts.yDomain[0] : -Infinity));
    const yHi = this.y(mean + sd);
    this.parts.push(
      `<line x1="${cx}" y1="${yLo.toFixed(2)}" x2="${cx}" y2="${yHi.toFixed(2)}" ` +
        `stroke="${color}" stroke-width="1.4"/>`,
    );
  }

  series(label: string, color: string): void {
    this.legendEntries.push({ label, color });
  }

  render(): string {
    const { width, height, opts } = this;
    const [xLo, xHi] = opts.xDomain;
    const [yLo, yHi] = opts.yDomain;
    const axisParts: string[] = [];
    const plotLeft = MARGIN.left;
    const plotRight = width - MARGIN.right;
    const plotTop = MARGIN.top;
    const plotBottom = height - MARGIN.bottom;

    axisParts.push(
      `<rect x="${plotLeft}" y="${plotTop}" width="${plotRight - plotLeft}" ` +
        `height="${plotBottom - plotTop}" fill="none" stroke="#444" stroke-width="1"/>`,
    );
    const xTicks = opts.logX ? logTicks(xLo, xHi) : niceTicks(xLo, xHi);
    for (const t of xTicks) {
      const px = this.x(t).toFixed(2);
      axisParts.push(
        `<line x1="${px}" y1="${plotBottom}" x2="${px}" y2="${plotBottom + 5}" stroke="#444"/>`,
        `<text x="${px}" y="${plotBottom + 18}" font-size="11" text-anchor="middle">${fmtTick(t)}</text>`,
      );
    }
    const yTicks = opts.logY ? logTicks(yLo, yHi) : niceTicks(yLo, yHi);
    for (const t of yTicks) {
      const py = this.y(t).toFixed(2);
      axisParts.push(
        `<line x1="${plotLeft - 5}" y1="${py}" x2="${plotLeft}" y2="${py}" stroke="#444"/>`,
        `<text x="${plotLeft - 8}" y="${py}" font-size="11" text-anchor="end" dominant-baseline="middle">${fmtTick(t)}</text>`,
        `<line x1="${plotLeft}" y1="${py}" x2="${plotRight}" y2="${py}" stroke="#ddd" stroke-width="0.5"/>`,
      );
    }
    if (opts.title) {
      axisParts.push(
        `<text x="${(plotLeft + plotRight) / 2}" y="20" font-size="13" font-weight="bold" ` +
          `text-anchor="middle">${esc(opts.title)}</text>`,
      );
    }
    if (opts.xLabel) {
      axisParts.push(
        `<text x="${(plotLeft + plotRight) / 2}" y="${height - 10}" font-size="12" ` +
          `text-anchor="middle">${esc(opts.xLabel)}</text>`,
      );
    }
    if (opts.yLabel) {
      axisParts.push(
        `<text x="16" y="${(plotTop + plotBottom) / 2}" font-size="12" text-anchor="middle" ` +
          `transform="rotate(-90 16 ${(plotTop + plotBottom) / 2})">${esc(opts.yLabel)}</text>`,
      );
    }
    let legend = "";
    if (this.legendEntries.length > 0) {
      const items = this.legendEntries.map((entry, k) => {
        const y = plotTop + 14 + 16 * k;
        return (
          `<rect x="${plotRight - 150}" y="${y - 8}" width="12" height="12" fill="${entry.color}"/>` +
          `<text x="${plotRight - 133}" y="${y + 2}" font-size="11">${esc(entry.label)}</text>`
        );
      });
      legend = items.join("");
    }
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">` +
      `<rect width="${width}" height="${height}" fill="white"/>` +
      axisParts.join("") +
      this.parts.join("") +
      legend +
      `</svg>`
    );
  }
}
