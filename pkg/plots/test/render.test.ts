// End-to-end rendering from the committed golden experiment outputs.

import { mkdtempSync, readFileSync, statSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { FIGURE_KINDS } from "../src/figures.js";
import { main, renderJob } from "../src/main.js";
import { parseFigureSpec } from "../src/spec.js";
import { SchemaError } from "../src/validate.js";

const TESTDATA = join(dirname(fileURLToPath(import.meta.url)), "..", "testdata");
const SPEC_PATH = join(TESTDATA, "figures.json");

function freshDir(): string {
  return mkdtempSync(join(tmpdir(), "plots-"));
}

describe("figure spec", () => {
  it("parses the golden spec and covers every figure kind", () => {
    const jobs = parseFigureSpec(readFileSync(SPEC_PATH, "utf-8"), SPEC_PATH);
    const kinds = new Set(jobs.map((job) => job.kind));
    for (const kind of Object.keys(FIGURE_KINDS)) {
      expect(kinds.has(kind), `spec misses kind ${kind}`).toBe(true);
    }
  });

  it("rejects unknown kinds", () => {
    expect(() =>
      parseFigureSpec('{"figures": [{"kind": "pie", "inputs": {}, "output": "x.svg"}]}', "s"),
    ).toThrow(/unknown kind 'pie'/);
  });

  it("rejects a job missing a required input", () => {
    expect(() =>
      parseFigureSpec(
        '{"figures": [{"kind": "cp_curves", "inputs": {}, "output": "x.svg"}]}',
        "s",
      ),
    ).toThrow(/needs input 'cp'/);
  });
});

describe("rendering the golden outputs", () => {
  const jobs = parseFigureSpec(readFileSync(SPEC_PATH, "utf-8"), SPEC_PATH);

  it.each(jobs.map((job) => [job.output, job] as const))(
    "renders %s non-empty",
    (_name, job) => {
      const out = freshDir();
      const path = renderJob(job, TESTDATA, out);
      const stats = statSync(path);
      expect(stats.size).toBeGreaterThan(500);
      const svg = readFileSync(path, "utf-8");
      expect(svg.startsWith("<svg")).toBe(true);
      expect(svg.endsWith("</svg>")).toBe(true);
    },
  );

  it("is idempotent", () => {
    const out = freshDir();
    const job = jobs.find((j) => j.kind === "cp_curves")!;
    const first = readFileSync(renderJob(job, TESTDATA, out), "utf-8");
    const second = readFileSync(renderJob(job, TESTDATA, out), "utf-8");
    expect(second).toBe(first);
  });
});

describe("refusing bad data", () => {
  it("refuses a corrupted CP curve", () => {
    const dir = freshDir();
    const bad = join(dir, "cp.csv");
    // cp jumps upward at threshold 0.9: not a cumulative distribution
    writeFileSync(bad, "run_id,threshold,cp\nr,0.0,0.8\nr,0.5,0.4\nr,0.9,0.9\n");
    const job = {
      kind: "cp_curves",
      inputs: { cp: [bad] },
      output: "cp.svg",
      options: {},
    };
    expect(() => renderJob(job, dir, dir)).toThrow(SchemaError);
    expect(() => renderJob(job, dir, dir)).toThrow(/increases at threshold 0.9/);
  });

  it("refuses a histogram whose masses do not sum to one", () => {
    const dir = freshDir();
    const bad = join(dir, "histogram.csv");
    writeFileSync(bad, "run_id,bin_lo,mass\nr,0.99,0.3\nr,1.0,0.3\n");
    const job = {
      kind: "ratio_histogram",
      inputs: { histogram: [bad] },
      output: "h.svg",
      options: {},
    };
    expect(() => renderJob(job, dir, dir)).toThrow(/sum to/);
  });

  it("names a missing column", () => {
    const dir = freshDir();
    const bad = join(dir, "metrics.csv");
    writeFileSync(bad, "run_id,n,lambda,algo,p\nr,8,0.0,qaa,5\n");
    const job = {
      kind: "alpha_vs_ptot",
      inputs: { metrics: [bad] },
      output: "a.svg",
      options: {},
    };
    expect(() => renderJob(job, dir, dir)).toThrow(/missing column 'delta'/);
  });
});

describe("command line", () => {
  it("renders the full golden spec and returns 0", () => {
    const out = freshDir();
    const code = main(["--spec", SPEC_PATH, "--outdir", out]);
    expect(code).toBe(0);
    const jobs = parseFigureSpec(readFileSync(SPEC_PATH, "utf-8"), SPEC_PATH);
    for (const job of jobs) {
      expect(statSync(join(out, job.output)).size).toBeGreaterThan(500);
    }
  });

  it("returns 4 on a corrupted input", () => {
    const dir = freshDir();
    writeFileSync(join(dir, "cp.csv"),
      "run_id,threshold,cp\nr,0.0,0.2\nr,1.0,0.8\n");
    writeFileSync(join(dir, "figures.json"), JSON.stringify({
      figures: [{ kind: "cp_curves", inputs: { cp: "cp.csv" }, output: "cp.svg" }],
    }));
    const code = main(["--spec", join(dir, "figures.json"), "--outdir", dir]);
    expect(code).toBe(4);
  });
});
