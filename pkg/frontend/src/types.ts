// Wire types for the local simulate service.

export interface CellJson {
  f: string; // front color name
  b: string; // back color name
  s: string; // slant glyph "/" "\\" "|"
  h: number; // front hole index 0..3 (A..D)
  r: number; // rotation after this pick
  q: number; // signed twist after this pick
}

export interface ThreadingJson {
  sz: "S" | "Z";
  colors: [string, string, string, string];
}

export interface DrawdownJson {
  version: number;
  tablets: number;
  picks: number;
  palette: Record<string, string>;
  threading: ThreadingJson[];
  cells: CellJson[][];
}

export interface DiagnosticJson {
  line: number;
  col: number;
  code: string;
  msg: string;
}

export interface ExampleJson {
  id: string;
  title: string;
  source: string;
}

export type Face = "front" | "back";

export type SimulateResult =
  | { ok: true; drawdown: DrawdownJson }
  | { ok: false; diagnostics: DiagnosticJson[] };
