import { readFileSync } from 'fs';

export interface CsvTable {
  header: string[];
  rows: string[][];
  file: string;
}

/** Parse a simple header+rows CSV (the CLI schemas never quote fields). */
export function readCsv(file: string): CsvTable {
  let text: string;
  try {
    text = readFileSync(file, 'utf8');
  } catch (err) {
    throw new Error(`cannot read ${file}: ${(err as Error).message}`);
  }
  const lines = text.split('\n').filter((line) => line.trim().length > 0);
  if (lines.length === 0) {
    throw new Error(`empty CSV: ${file}`);
  }
  const header = lines[0].split(',').map((s) => s.trim());
  const rows = lines.slice(1).map((line) => line.split(',').map((s) => s.trim()));
  return { header, rows, file };
}

export function columnIndex(table: CsvTable, name: string): number {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new Error(`missing column '${name}' in ${table.file} (has: ${table.header.join(', ')})`);
  }
  return idx;
}

export function numericColumn(table: CsvTable, name: string): number[] {
  const idx = columnIndex(table, name);
  return table.rows.map((row, i) => {
    const value = Number(row[idx]);
    if (!Number.isFinite(value)) {
      throw new Error(`non-numeric value '${row[idx]}' for column '${name}' at row ${i + 2} of ${table.file}`);
    }
    return value;
  });
}
