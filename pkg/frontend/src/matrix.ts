// Pure projections of a drawdown onto what the band view shows.
// These must agree cell-for-cell with the CLI text renderer, including
// the left-right mirroring of the back face.

import type { CellJson, DrawdownJson, Face } from "./types.js";

const MIRROR: Record<string, string> = { "|": "|", "/": "\\", "\\": "/" };

export function colorMatrix(dd: DrawdownJson, face: Face): string[][] {
  return dd.cells.map((row) => {
    const colors = row.map((c) => (face === "front" ? c.f : c.b));
    return face === "front" ? colors : colors.reverse();
  });
}

export function slantMatrix(dd: DrawdownJson, face: Face): string[][] {
  return dd.cells.map((row) => {
    const slants = row.map((c) => (face === "front" ? c.s : MIRROR[c.s]));
    return face === "front" ? slants : slants.reverse();
  });
}

/** One line per pick, first letter of the color plus slant glyph --
 *  the same format `render --format text` emits. */
export function textLines(dd: DrawdownJson, face: Face): string[] {
  const colors = colorMatrix(dd, face);
  const slants = slantMatrix(dd, face);
  return colors.map((row, p) => row.map((c, t) => c[0] + slants[p][t]).join(""));
}

/** The drawdown cell behind an on-screen position for the given face. */
export function cellAt(dd: DrawdownJson, face: Face, pick: number, column: number): CellJson {
  const tablet = face === "front" ? column : dd.tablets - 1 - column;
  return dd.cells[pick][tablet];
}

export const HOLE_LABELS = "ABCD";

/** Per-tablet twist series plus where each tablet first exceeds the threshold. */
export function twistSeries(dd: DrawdownJson, threshold: number) {
  const tablets = dd.tablets;
  const finalTwist: number[] = new Array(tablets).fill(0);
  const firstWarningPick: (number | null)[] = new Array(tablets).fill(null);
  const maxAbs: number[] = new Array(tablets).fill(0);
  dd.cells.forEach((row, p) => {
    row.forEach((c, t) => {
      finalTwist[t] = c.q;
      maxAbs[t] = Math.max(maxAbs[t], Math.abs(c.q));
      if (firstWarningPick[t] === null && Math.abs(c.q) > threshold) {
        firstWarningPick[t] = p + 1; // 1-based pick
      }
    });
  });
  return { finalTwist, maxAbs, firstWarningPick, threshold };
}
