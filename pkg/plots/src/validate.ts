// Schema and invariant checks. The renderer refuses data that violates the
// metric identities instead of drawing a misleading figure.

import type { Table } from "./csv.js";

export class SchemaError extends Error {}

export function requireColumns(table: Table, needed: string[], source: string): void {
  for (const column of needed) {
    if (!table.columns.includes(column)) {
      throw new SchemaError(`${source}: missing column '${column}'`);
    }
  }
}

export function num(row: Record<string, string>, column: string, source: string): number {
  const cell = row[column];
  if (cell === undefined || cell === "") {
    throw new SchemaError(`${source}: empty value in column '${column}'`);
  }
  const value = Number(cell);
  if (!Number.isFinite(value)) {
    throw new SchemaError(`${source}: non-numeric value '${cell}' in column '${column}'`);
  }
  return value;
}

export function optionalNum(row: Record<string, string>, column: string): number | null {
  const cell = row[column];
  if (cell === undefined || cell === "") return null;
  const value = Number(cell);
  return Number.isFinite(value) ? value : null;
}

/** Cumulative-probability rows must be non-increasing along ascending thresholds. */
export function validateCpCurve(table: Table, source: string): void {
  requireColumns(table, ["run_id", "threshold", "cp"], source);
  let prevThreshold = -Infinity;
  let prevCp = Infinity;
  for (const row of table.rows) {
    const threshold = num(row, "threshold", source);
    const cp = num(row, "cp", source);
    if (threshold < prevThreshold) {
      throw new SchemaError(`${source}: thresholds not ascending at ${threshold}`);
    }
    if (cp > prevCp + 1e-9) {
      throw new SchemaError(
        `${source}: cumulative probability increases at threshold ${threshold} ` +
          `(${prevCp} -> ${cp})`,
      );
    }
    prevThreshold = threshold;
    prevCp = cp;
  }
}

/** Histogram masses must sum to 1. */
export function validateHistogram(table: Table, source: string): void {
  requireColumns(table, ["run_id", "bin_lo", "mass"], source);
  let total = 0;
  for (const row of table.rows) total += num(row, "mass", source);
  if (Math.abs(total - 1.0) > 1e-9) {
    throw new SchemaError(`${source}: histogram masses sum to ${total}, expected 1`);
  }
}
