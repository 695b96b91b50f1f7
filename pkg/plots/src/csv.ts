// Minimal CSV reader for the pinned experiment schemas (no quoting, no
// embedded separators).

export interface Table {
  columns: string[];
  rows: Record<string, string>[];
}

export function parseCsv(text: string): Table {
  const lines = text
    .split(/\r?\n/)
    .filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error("empty CSV");
  }
  const columns = lines[0]!.split(",");
  const rows: Record<string, string>[] = [];
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    if (cells.length !== columns.length) {
      throw new Error(
        `CSV row has ${cells.length} cells, header has ${columns.length}: '${line}'`,
      );
    }
    const row: Record<string, string> = {};
    columns.forEach((name, k) => {
      row[name] = cells[k]!;
    });
    rows.push(row);
  }
  return { columns, rows };
}
