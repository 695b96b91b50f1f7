// One renderer per figure kind. Every renderer takes already-loaded input
// files, validates the pinned schema, and returns an SVG string.

import { parseCsv, type Table } from "./csv.js";
import { Chart, PALETTE, esc } from "./svg.js";
import {
  SchemaError,
  num,
  optionalNum,
  requireColumns,
  validateCpCurve,
  validateHistogram,
} from "./validate.js";

export interface LoadedInput {
  path: string;
  text: string;
}

export type InputMap = Record<string, LoadedInput[]>;
export type Options = Record<string, unknown>;

interface SiteFile {
  label?: string;
  sites: { x: number; y: number; r: number }[];
}

interface InstanceFile {
  xi: number;
  lambda: number;
  n_t: number;
  J: number[][];
  A: number[];
}

interface SolutionFile {
  ground_strings: string[];
}

function parseJson<T>(input: LoadedInput): T {
  try {
    return JSON.parse(input.text) as T;
  } catch (err) {
    throw new SchemaError(`${input.path}: not valid JSON (${(err as Error).message})`);
  }
}

function table(input: LoadedInput): Table {
  try {
    return parseCsv(input.text);
  } catch (err) {
    throw new SchemaError(`${input.path}: ${(err as Error).message}`);
  }
}

function one(inputs: InputMap, key: string): LoadedInput {
  const list = inputs[key];
  if (!list || list.length === 0) throw new SchemaError(`missing input '${key}'`);
  return list[0]!;
}

function many(inputs: InputMap, key: string): LoadedInput[] {
  const list = inputs[key];
  if (!list || list.length === 0) throw new SchemaError(`missing input '${key}'`);
  return list;
}

function str(options: Options, key: string, fallback: string): string {
  const value = options[key];
  return typeof value === "string" ? value : fallback;
}

function numOpt(options: Options, key: string, fallback: number): number {
  const value = options[key];
  return typeof value === "number" && Number.isFinite(value) ? value : fallback;
}

/** Reduced couplings of the instance file: Jt off-diagonal, At on the diagonal. */
function reducedMatrix(inst: InstanceFile, source: string): number[][] {
  if (!Array.isArray(inst.J) || !Array.isArray(inst.A)) {
    throw new SchemaError(`${source}: instance needs precomputed 'J' and 'A'`);
  }
  const n = inst.A.length;
  const delta = n - 2 * inst.n_t;
  const out: number[][] = [];
  for (let i = 0; i < n; i++) {
    const row = inst.J[i];
    if (!row || row.length !== n) {
      throw new SchemaError(`${source}: J row ${i} has wrong length`);
    }
    out.push(
      row.map((v, j) =>
        i === j ? inst.lambda * delta - inst.xi * inst.A[i]! : v + inst.lambda,
      ),
    );
  }
  return out;
}

// -- spatial figures ---------------------------------------------------------

function renderSiteMap(inputs: InputMap, options: Options): string {
  const siteFile = parseJson<SiteFile>(one(inputs, "sites"));
  if (!Array.isArray(siteFile.sites) || siteFile.sites.length === 0) {
    throw new SchemaError(`${one(inputs, "sites").path}: no sites`);
  }
  let active: boolean[] | null = null;
  if (inputs["solution"] && inputs["solution"].length > 0) {
    const solution = parseJson<SolutionFile>(one(inputs, "solution"));
    const first = solution.ground_strings?.[0];
    if (!first || first.length !== siteFile.sites.length) {
      throw new SchemaError(
        `${one(inputs, "solution").path}: ground string length does not match site count`,
      );
    }
    active = [...first].map((b) => b === "1");
  }
  const xs = siteFile.sites.map((s) => s.x);
  const ys = siteFile.sites.map((s) => s.y);
  const rs = siteFile.sites.map((s) => s.r);
  const pad = Math.max(...rs) * 1.2;
  const xLo = Math.min(...xs) - pad;
  const xHi = Math.max(...xs) + pad;
  const yLo = Math.min(...ys) - pad;
  const yHi = Math.max(...ys) + pad;
  const size = 520;
  const scale = (size - 40) / Math.max(xHi - xLo, yHi - yLo);
  const px = (x: number) => 20 + (x - xLo) * scale;
  const py = (y: number) => size - 20 - (y - yLo) * scale;
  const parts: string[] = [];
  siteFile.sites.forEach((site, k) => {
    const on = active ? active[k]! : true;
    const color = active === null ? "#888888" : on ? "#2ca02c" : "#1f77b4";
    parts.push(
      `<circle cx="${px(site.x).toFixed(1)}" cy="${py(site.y).toFixed(1)}" ` +
        `r="${(site.r * scale).toFixed(1)}" fill="${color}" fill-opacity="0.25" ` +
        `stroke="${color}" stroke-width="1.5"/>`,
    );
  });
  siteFile.sites.forEach((site) => {
    parts.push(
      `<circle cx="${px(site.x).toFixed(1)}" cy="${py(site.y).toFixed(1)}" r="2.5" fill="black"/>`,
    );
  });
  const title = str(options, "title", siteFile.label ?? "candidate sites");
  parts.push(
    `<text x="${size / 2}" y="16" font-size="13" font-weight="bold" text-anchor="middle">` +
      `${esc(title)}${active ? " (green = active, blue = inactive)" : ""}</text>`,
  );
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${size}" height="${size}" ` +
    `viewBox="0 0 ${size} ${size}" font-family="Helvetica, Arial, sans-serif">` +
    `<rect width="${size}" height="${size}" fill="white"/>` +
    parts.join("") +
    `</svg>`
  );
}

function heatColor(t: number): string {
  // blue (low) -> white (mid) -> red (high)
  const clamp = Math.max(0, Math.min(1, t));
  const mix = (a: number, b: number, u: number) => Math.round(a + (b - a) * u);
  if (clamp < 0.5) {
    const u = clamp * 2;
    return `rgb(${mix(33, 255, u)},${mix(102, 255, u)},${mix(172, 255, u)})`;
  }
  const u = (clamp - 0.5) * 2;
  return `rgb(${mix(255, 178, u)},${mix(255, 24, u)},${mix(255, 43, u)})`;
}

function renderCouplingHeatmap(inputs: InputMap, options: Options): string {
  const input = one(inputs, "instance");
  const inst = parseJson<InstanceFile>(input);
  const matrix = reducedMatrix(inst, input.path);
  const n = matrix.length;
  const flat = matrix.flat();
  const lo = Math.min(...flat);
  const hi = Math.max(...flat);
  const span = hi - lo || 1;
  const cell = Math.max(6, Math.floor(420 / n));
  const size = cell * n;
  const left = 60;
  const top = 40;
  const parts: string[] = [];
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      const color = heatColor((matrix[i]![j]! - lo) / span);
      parts.push(
        `<rect x="${left + j * cell}" y="${top + i * cell}" width="${cell}" ` +
          `height="${cell}" fill="${color}"/>`,
      );
    }
  }
  const title = str(options, "title", `couplings (lambda=${inst.lambda})`);
  parts.push(
    `<rect x="${left}" y="${top}" width="${size}" height="${size}" fill="none" stroke="#444"/>`,
    `<text x="${left + size / 2}" y="24" font-size="13" font-weight="bold" ` +
      `text-anchor="middle">${esc(title)}</text>`,
    `<text x="${left + size / 2}" y="${top + size + 22}" font-size="12" ` +
      `text-anchor="middle">site j (diagonal shows the local field)</text>`,
    `<text x="20" y="${top + size / 2}" font-size="12" text-anchor="middle" ` +
      `transform="rotate(-90 20 ${top + size / 2})">site i</text>`,
  );
  const width = left + size + 30;
  const height = top + size + 40;
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">` +
    `<rect width="${width}" height="${height}" fill="white"/>` +
    parts.join("") +
    `</svg>`
  );
}

function renderConnectivityHistogram(inputs: InputMap, options: Options): string {
  const input = one(inputs, "instance");
  const inst = parseJson<InstanceFile>(input);
  const matrix = reducedMatrix(inst, input.path);
  const counts = new Map<number, number>();
  matrix.forEach((row, i) => {
    const degree = row.filter((v, j) => j !== i && v !== 0).length;
    counts.set(degree, (counts.get(degree) ?? 0) + 1);
  });
  const degrees = [...counts.keys()].sort((a, b) => a - b);
  const maxCount = Math.max(...counts.values());
  const chart = new Chart({
    title: str(options, "title", "connectivity distribution"),
    xLabel: "connections per site",
    yLabel: "sites",
    xDomain: [Math.min(...degrees) - 0.6, Math.max(...degrees) + 0.6],
    yDomain: [0, maxCount * 1.15],
  });
  for (const degree of degrees) {
    chart.bar(degree - 0.4, degree + 0.4, counts.get(degree)!, PALETTE[0]!);
  }
  return chart.render();
}

// -- curve figures -----------------------------------------------------------

function renderCostVsDelta(inputs: InputMap, options: Options): string {
  const tables = many(inputs, "sweep").map((input) => ({ input, data: table(input) }));
  const series = new Map<string, [number, number][]>();
  let yLo = Infinity;
  let yHi = -Infinity;
  let xLo = Infinity;
  let xHi = -Infinity;
  for (const { input, data } of tables) {
    requireColumns(data, ["run_id", "p", "delta", "h_exp", "alpha"], input.path);
    for (const row of data.rows) {
      const p = num(row, "p", input.path);
      const delta = num(row, "delta", input.path);
      const h = num(row, "h_exp", input.path);
      const key = `p=${p}`;
      if (!series.has(key)) series.set(key, []);
      series.get(key)!.push([delta, h]);
      yLo = Math.min(yLo, h);
      yHi = Math.max(yHi, h);
      xLo = Math.min(xLo, delta);
      xHi = Math.max(xHi, delta);
    }
  }
  const margin = (yHi - yLo || 1) * 0.08;
  const chart = new Chart({
    title: str(options, "title", "cost vs time step"),
    xLabel: "delta",
    yLabel: "<H>",
    xDomain: [xLo, xHi],
    yDomain: [yLo - margin, yHi + margin],
  });
  let k = 0;
  for (const [label, points] of series) {
    const color = PALETTE[k % PALETTE.length]!;
    points.sort((a, b) => a[0] - b[0]);
    chart.line(points, color);
    chart.scatter(points, color, 2.5);
    chart.series(label, color);
    k += 1;
  }
  return chart.render();
}

interface MetricsRow {
  n: number;
  lambda: number;
  algo: string;
  p: number;
  seed: string;
  alpha: number | null;
  alpha_mp: number | null;
  p_gs: number | null;
  gs_fraction: number | null;
}

function metricsRows(input: LoadedInput): MetricsRow[] {
  const data = table(input);
  requireColumns(
    data,
    ["run_id", "n", "lambda", "algo", "p", "delta", "n_meas", "seed",
     "alpha", "alpha_mp", "p_gs", "gs_fraction"],
    input.path,
  );
  return data.rows.map((row) => ({
    n: num(row, "n", input.path),
    lambda: num(row, "lambda", input.path),
    algo: row["algo"] ?? "",
    p: num(row, "p", input.path),
    seed: row["seed"] ?? "",
    alpha: optionalNum(row, "alpha"),
    alpha_mp: optionalNum(row, "alpha_mp"),
    p_gs: optionalNum(row, "p_gs"),
    gs_fraction: optionalNum(row, "gs_fraction"),
  }));
}

function metricValue(row: MetricsRow, metric: string, source: string): number {
  const value =
    metric === "alpha" ? row.alpha
    : metric === "alpha_mp" ? row.alpha_mp
    : metric === "p_gs" ? row.p_gs
    : metric === "gs_fraction" ? row.gs_fraction
    : null;
  if (value === null) {
    throw new SchemaError(`${source}: row lacks a value for metric '${metric}'`);
  }
  return value;
}

function renderAlphaVsPtot(inputs: InputMap, options: Options): string {
  const metric = str(options, "metric", "alpha");
  const iters = numOpt(options, "iters", 50);
  const logY = metric === "p_gs" || metric === "gs_fraction";
  const series: { label: string; points: [number, number][] }[] = [];
  let xLo = Infinity, xHi = -Infinity, yLo = Infinity, yHi = -Infinity;
  for (const input of many(inputs, "metrics")) {
    const byAlgo = new Map<string, [number, number][]>();
    for (const row of metricsRows(input)) {
      const pTot = row.algo === "qaoa" ? row.p * iters : row.p;
      const value = metricValue(row, metric, input.path);
      if (logY && value <= 0) continue;
      if (!byAlgo.has(row.algo)) byAlgo.set(row.algo, []);
      byAlgo.get(row.algo)!.push([pTot, value]);
      xLo = Math.min(xLo, pTot); xHi = Math.max(xHi, pTot);
      yLo = Math.min(yLo, value); yHi = Math.max(yHi, value);
    }
    for (const [algo, points] of byAlgo) {
      points.sort((a, b) => a[0] - b[0]);
      series.push({ label: `${algo} (${input.path.split("/").pop()})`, points });
    }
  }
  if (series.length === 0) throw new SchemaError("no plottable rows for alpha_vs_ptot");
  const chart = new Chart({
    title: str(options, "title", `${metric} vs total applied layers`),
    xLabel: "p_tot",
    yLabel: metric,
    xDomain: [Math.max(xLo * 0.9, 0.5), xHi * 1.1],
    yDomain: logY ? [yLo * 0.5, yHi * 2] : [Math.min(yLo, 0), Math.max(yHi * 1.1, 1)],
    logX: true,
    logY,
  });
  series.forEach(({ label, points }, k) => {
    const color = PALETTE[k % PALETTE.length]!;
    chart.line(points, color);
    chart.scatter(points, color, 3);
    chart.series(label, color);
  });
  return chart.render();
}

function renderPminVsN(inputs: InputMap, options: Options): string {
  const byAlgo = new Map<string, [number, number][]>();
  let found = 0;
  for (const input of many(inputs, "pmin")) {
    const data = table(input);
    requireColumns(data, ["run_id", "algo", "n", "alpha_threshold", "p_min"], input.path);
    for (const row of data.rows) {
      const pMin = optionalNum(row, "p_min");
      if (pMin === null) continue; // threshold not reached on the grid
      const algo = row["algo"] ?? "";
      if (!byAlgo.has(algo)) byAlgo.set(algo, []);
      byAlgo.get(algo)!.push([num(row, "n", input.path), pMin]);
      found += 1;
    }
  }
  if (found === 0) throw new SchemaError("no reached thresholds in the pmin inputs");
  const all = [...byAlgo.values()].flat();
  const ns = all.map(([n]) => n);
  const ps = all.map(([, p]) => p);
  const chart = new Chart({
    title: str(options, "title", "minimum depth reaching the ratio threshold"),
    xLabel: "sites N",
    yLabel: "p_min",
    xDomain: [Math.min(...ns) - 1, Math.max(...ns) + 1],
    yDomain: [0, Math.max(...ps) * 1.2],
  });
  let k = 0;
  for (const [algo, points] of byAlgo) {
    const color = PALETTE[k % PALETTE.length]!;
    points.sort((a, b) => a[0] - b[0]);
    chart.line(points, color);
    chart.scatter(points, color, 3.5);
    chart.series(algo, color);
    k += 1;
  }
  return chart.render();
}

function renderPgsVsN(inputs: InputMap, options: Options): string {
  const metric = str(options, "metric", "p_gs");
  const series = new Map<string, [number, number][]>();
  let yLo = Infinity, yHi = -Infinity, nLo = Infinity, nHi = -Infinity;
  for (const input of many(inputs, "metrics")) {
    for (const row of metricsRows(input)) {
      const value = metricValue(row, metric, input.path);
      if (value <= 0) continue; // never measured; cannot sit on a log axis
      const key = `${row.algo} lam=${row.lambda}`;
      if (!series.has(key)) series.set(key, []);
      series.get(key)!.push([row.n, value]);
      yLo = Math.min(yLo, value); yHi = Math.max(yHi, value);
      nLo = Math.min(nLo, row.n); nHi = Math.max(nHi, row.n);
    }
  }
  if (series.size === 0) throw new SchemaError("no positive probabilities to plot");
  const uniformFloor = Math.pow(2, -nHi);
  yLo = Math.min(yLo, uniformFloor);
  const chart = new Chart({
    title: str(options, "title", "ground-state probability vs size"),
    xLabel: "sites N",
    yLabel: metric,
    xDomain: [nLo - 0.5, nHi + 0.5],
    yDomain: [yLo * 0.5, Math.max(yHi * 2, 1)],
    logY: true,
  });
  // reference: probability of any one string in the uniform superposition
  const floor: [number, number][] = [];
  for (let n = Math.ceil(nLo); n <= nHi; n++) floor.push([n, Math.pow(2, -n)]);
  chart.line(floor, "#000000", "4 3");
  chart.series("2^-N", "#000000");
  let k = 0;
  for (const [label, points] of series) {
    const color = PALETTE[k % PALETTE.length]!;
    points.sort((a, b) => a[0] - b[0]);
    chart.line(points, color);
    chart.scatter(points, color, 3);
    chart.series(label, color);
    k += 1;
  }
  return chart.render();
}

function renderSeedScatter(inputs: InputMap, options: Options): string {
  const metric = str(options, "metric", "alpha");
  const perP = new Map<number, number[]>();
  const points: [number, number][] = [];
  for (const input of many(inputs, "metrics")) {
    for (const row of metricsRows(input)) {
      const value = metricValue(row, metric, input.path);
      if (!perP.has(row.p)) perP.set(row.p, []);
      perP.get(row.p)!.push(value);
      points.push([row.p, value]);
    }
  }
  if (points.length === 0) throw new SchemaError("no rows for seed_scatter");
  const ps = [...perP.keys()].sort((a, b) => a - b);
  const means: number[] = [];
  const sds: number[] = [];
  for (const p of ps) {
    const values = perP.get(p)!;
    const mean = values.reduce((a, b) => a + b, 0) / values.length;
    const variance = values.reduce((a, b) => a + (b - mean) ** 2, 0) / values.length;
    means.push(mean);
    sds.push(Math.sqrt(variance));
  }
  const values = points.map(([, v]) => v);
  const yLo = Math.min(...values, ...means.map((m, k) => m - sds[k]!));
  const yHi = Math.max(...values, ...means.map((m, k) => m + sds[k]!));
  const pad = (yHi - yLo || 1) * 0.1;
  const chart = new Chart({
    title: str(options, "title", `${metric} per measurement seed`),
    xLabel: "p",
    yLabel: metric,
    xDomain: [Math.min(...ps) - 1, Math.max(...ps) + 1],
    yDomain: [yLo - pad, yHi + pad],
  });
  const color = PALETTE[0]!;
  chart.band(ps, means.map((m, k) => m - sds[k]!), means.map((m, k) => m + sds[k]!), color);
  chart.line(ps.map((p, k) => [p, means[k]!] as [number, number]), color);
  chart.scatter(points, color, 2.4, false);
  chart.series("mean +- sd", color);
  return chart.render();
}

function renderRatioHistogram(inputs: InputMap, options: Options): string {
  const tables = many(inputs, "histogram").map((input) => ({ input, data: table(input) }));
  let xLo = Infinity, xHi = -Infinity, yHi = -Infinity;
  const seriesData: { label: string; bars: [number, number][] }[] = [];
  for (const { input, data } of tables) {
    validateHistogram(data, input.path);
    const bars: [number, number][] = data.rows.map((row) => [
      num(row, "bin_lo", input.path),
      num(row, "mass", input.path),
    ]);
    for (const [lo, mass] of bars) {
      xLo = Math.min(xLo, lo);
      xHi = Math.max(xHi, lo + 0.01);
      yHi = Math.max(yHi, mass);
    }
    seriesData.push({ label: input.path.split("/").pop() ?? input.path, bars });
  }
  const chart = new Chart({
    title: str(options, "title", "probability by cost ratio (bins 0.01 wide)"),
    xLabel: "ratio",
    yLabel: "mass",
    xDomain: [xLo - 0.01, xHi + 0.01],
    yDomain: [0, yHi * 1.15],
  });
  seriesData.forEach(({ label, bars }, k) => {
    const color = PALETTE[k % PALETTE.length]!;
    for (const [lo, mass] of bars) chart.bar(lo, lo + 0.01, mass, color);
    chart.series(label, color);
  });
  return chart.render();
}

function renderCpCurves(inputs: InputMap, options: Options): string {
  const curves: { label: string; points: [number, number][] }[] = [];
  let yHi = 0;
  for (const input of many(inputs, "cp")) {
    const data = table(input);
    validateCpCurve(data, input.path); // refuses non-monotone data
    const points: [number, number][] = data.rows.map((row) => [
      num(row, "threshold", input.path),
      num(row, "cp", input.path),
    ]);
    yHi = Math.max(yHi, ...points.map(([, v]) => v));
    curves.push({ label: input.path.split("/").pop() ?? input.path, points });
  }
  const chart = new Chart({
    title: str(options, "title", "cumulative probability above a ratio threshold"),
    xLabel: "ratio threshold",
    yLabel: "CP",
    xDomain: [0, 1],
    yDomain: [0, Math.max(yHi * 1.1, 1)],
  });
  curves.forEach(({ label, points }, k) => {
    const color = PALETTE[k % PALETTE.length]!;
    chart.line(points, color);
    chart.series(label, color);
  });
  return chart.render();
}

// -- registry ----------------------------------------------------------------

export interface FigureKind {
  required: string[];
  render: (inputs: InputMap, options: Options) => string;
}

export const FIGURE_KINDS: Record<string, FigureKind> = {
  site_map: { required: ["sites"], render: renderSiteMap },
  coupling_heatmap: { required: ["instance"], render: renderCouplingHeatmap },
  connectivity_histogram: { required: ["instance"], render: renderConnectivityHistogram },
  cost_vs_delta: { required: ["sweep"], render: renderCostVsDelta },
  alpha_vs_ptot: { required: ["metrics"], render: renderAlphaVsPtot },
  pmin_vs_n: { required: ["pmin"], render: renderPminVsN },
  pgs_vs_n: { required: ["metrics"], render: renderPgsVsN },
  seed_scatter: { required: ["metrics"], render: renderSeedScatter },
  ratio_histogram: { required: ["histogram"], render: renderRatioHistogram },
  cp_curves: { required: ["cp"], render: renderCpCurves },
};
