#!/usr/bin/env node
// CLI: qantenna-plots --spec figures.json --outdir dir
//
// Reads the figure spec, loads every referenced CSV/JSON file, validates
// the pinned schemas and metric invariants, and writes one SVG per figure.
// Exit codes: 0 ok, 2 usage error, 4 bad data (schema/invariant violation).

import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { dirname, join, resolve } from "node:path";
import { pathToFileURL } from "node:url";

import { FIGURE_KINDS, type InputMap } from "./figures.js";
import { parseFigureSpec, type FigureJob } from "./spec.js";
import { SchemaError } from "./validate.js";

function usage(): never {
  process.stderr.write("usage: qantenna-plots --spec figures.json --outdir dir\n");
  process.exit(2);
}

function parseArgs(argv: string[]): { spec: string; outdir: string } {
  let spec: string | null = null;
  let outdir: string | null = null;
  for (let k = 0; k < argv.length; k++) {
    const arg = argv[k]!;
    if (arg === "--spec") spec = argv[++k] ?? null;
    else if (arg === "--outdir") outdir = argv[++k] ?? null;
    else usage();
  }
  if (!spec || !outdir) usage();
  return { spec, outdir };
}

function loadInputs(job: FigureJob, baseDir: string): InputMap {
  const loaded: InputMap = {};
  for (const [key, paths] of Object.entries(job.inputs)) {
    loaded[key] = paths.map((p) => {
      const full = resolve(baseDir, p);
      return { path: p, text: readFileSync(full, "utf-8") };
    });
  }
  return loaded;
}

export function renderJob(job: FigureJob, baseDir: string, outdir: string): string {
  const svg = FIGURE_KINDS[job.kind]!.render(loadInputs(job, baseDir), job.options);
  const outPath = join(outdir, job.output);
  mkdirSync(dirname(outPath), { recursive: true });
  writeFileSync(outPath, svg, "utf-8");
  return outPath;
}

export function main(argv: string[]): number {
  const { spec, outdir } = parseArgs(argv);
  let jobs: FigureJob[];
  try {
    jobs = parseFigureSpec(readFileSync(spec, "utf-8"), spec);
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`error: ${err.message}\n`);
      return 4;
    }
    process.stderr.write(`error: cannot read spec ${spec}: ${(err as Error).message}\n`);
    return 4;
  }
  mkdirSync(outdir, { recursive: true });
  const baseDir = dirname(resolve(spec));
  for (const job of jobs) {
    try {
      const outPath = renderJob(job, baseDir, outdir);
      process.stdout.write(`${job.kind} -> ${outPath}\n`);
    } catch (err) {
      if (err instanceof SchemaError) {
        process.stderr.write(`error: ${job.kind}: ${err.message}\n`);
        return 4;
      }
      process.stderr.write(`error: ${job.kind}: ${(err as Error).message}\n`);
      return 4;
    }
  }
  return 0;
}

const invokedDirectly = process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
