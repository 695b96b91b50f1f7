import { describe, expect, it } from "vitest";

import { parseCsv } from "../src/csv.js";
import {
  SchemaError,
  num,
  requireColumns,
  validateCpCurve,
  validateHistogram,
} from "../src/validate.js";

describe("requireColumns", () => {
  it("names the missing column and the file", () => {
    const table = parseCsv("run_id,threshold\nx,0.5\n");
    expect(() => requireColumns(table, ["run_id", "threshold", "cp"], "cp.csv"))
      .toThrow(/cp\.csv: missing column 'cp'/);
  });
});

describe("num", () => {
  it("names the offending column", () => {
    const table = parseCsv("a\nnot-a-number\n");
    expect(() => num(table.rows[0]!, "a", "f.csv")).toThrow(/column 'a'/);
  });

  it("rejects empty cells", () => {
    const table = parseCsv("a,b\n,2\n");
    expect(() => num(table.rows[0]!, "a", "f.csv")).toThrow(SchemaError);
  });
});

describe("validateCpCurve", () => {
  it("accepts non-increasing values", () => {
    const table = parseCsv("run_id,threshold,cp\nr,0.0,1.0\nr,0.5,0.7\nr,1.0,0.1\n");
    expect(() => validateCpCurve(table, "cp.csv")).not.toThrow();
  });

  it("refuses an increasing step", () => {
    const table = parseCsv("run_id,threshold,cp\nr,0.0,0.5\nr,0.5,0.9\n");
    expect(() => validateCpCurve(table, "cp.csv"))
      .toThrow(/cumulative probability increases/);
  });

  it("refuses unsorted thresholds", () => {
    const table = parseCsv("run_id,threshold,cp\nr,0.5,0.9\nr,0.0,1.0\n");
    expect(() => validateCpCurve(table, "cp.csv")).toThrow(/not ascending/);
  });
});

describe("validateHistogram", () => {
  it("accepts unit mass", () => {
    const table = parseCsv("run_id,bin_lo,mass\nr,0.99,0.25\nr,1.0,0.75\n");
    expect(() => validateHistogram(table, "h.csv")).not.toThrow();
  });

  it("refuses mass that does not sum to one", () => {
    const table = parseCsv("run_id,bin_lo,mass\nr,0.99,0.25\nr,1.0,0.5\n");
    expect(() => validateHistogram(table, "h.csv")).toThrow(/sum to 0.75/);
  });
});
