// Figure-spec JSON: which figures to draw, from which files, to where.

import { FIGURE_KINDS } from "./figures.js";
import { SchemaError } from "./validate.js";

export interface FigureJob {
  kind: string;
  inputs: Record<string, string[]>;
  output: string;
  options: Record<string, unknown>;
}

export function parseFigureSpec(text: string, source: string): FigureJob[] {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new SchemaError(`${source}: not valid JSON (${(err as Error).message})`);
  }
  const figures = (doc as { figures?: unknown }).figures;
  if (!Array.isArray(figures) || figures.length === 0) {
    throw new SchemaError(`${source}: expected a non-empty 'figures' array`);
  }
  return figures.map((raw, index) => normalizeJob(raw, `${source}: figures[${index}]`));
}

function normalizeJob(raw: unknown, source: string): FigureJob {
  if (typeof raw !== "object" || raw === null) {
    throw new SchemaError(`${source}: must be an object`);
  }
  const job = raw as Record<string, unknown>;
  const kind = job["kind"];
  if (typeof kind !== "string" || !(kind in FIGURE_KINDS)) {
    const known = Object.keys(FIGURE_KINDS).join(", ");
    throw new SchemaError(`${source}: unknown kind '${String(kind)}' (known: ${known})`);
  }
  const output = job["output"];
  if (typeof output !== "string" || output.length === 0) {
    throw new SchemaError(`${source}: missing 'output' file name`);
  }
  const rawInputs = job["inputs"];
  if (typeof rawInputs !== "object" || rawInputs === null) {
    throw new SchemaError(`${source}: missing 'inputs' object`);
  }
  const inputs: Record<string, string[]> = {};
  for (const [key, value] of Object.entries(rawInputs as Record<string, unknown>)) {
    if (typeof value === "string") {
      inputs[key] = [value];
    } else if (Array.isArray(value) && value.every((v) => typeof v === "string")) {
      inputs[key] = value as string[];
    } else {
      throw new SchemaError(`${source}: input '${key}' must be a path or list of paths`);
    }
  }
  for (const required of FIGURE_KINDS[kind]!.required) {
    if (!inputs[required] || inputs[required]!.length === 0) {
      throw new SchemaError(`${source}: kind '${kind}' needs input '${required}'`);
    }
  }
  const options = job["options"];
  return {
    kind,
    inputs,
    output,
    options: typeof options === "object" && options !== null
      ? (options as Record<string, unknown>)
      : {},
  };
}
