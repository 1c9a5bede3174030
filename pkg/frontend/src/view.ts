// DOM rendering: band grid, gutter diagnostics, tooltip, twist meters.

import { HOLE_LABELS, cellAt, colorMatrix, slantMatrix, twistSeries } from "./matrix.js";
import type { Session, SessionState } from "./session.js";
import type { Face } from "./types.js";

export const TWIST_WARN_THRESHOLD = 8;

export interface ViewElements {
  editor: HTMLTextAreaElement;
  gutter: HTMLElement;
  band: HTMLElement;
  twist: HTMLElement;
  banner: HTMLElement;
  tooltip: HTMLElement;
  faceButtons: NodeListOf<HTMLButtonElement>;
  exampleBadge: HTMLElement;
}

export function renderGutter(el: HTMLElement, state: SessionState) {
  el.textContent = "";
  const lines = state.source.split("\n").length;
  for (let line = 1; line <= lines; line++) {
    const row = document.createElement("div");
    row.className = "gutter-line";
    const diags = state.diagnostics.filter((d) => d.line === line);
    if (diags.length > 0) {
      row.classList.add("gutter-error");
      row.title = diags.map((d) => `${d.code}: ${d.msg}`).join("\n");
      row.textContent = "●";
    } else {
      row.textContent = String(line);
    }
    el.appendChild(row);
  }
}

export function renderBand(el: HTMLElement, state: SessionState, session: Session, tooltip: HTMLElement) {
  el.textContent = "";
  el.classList.toggle("stale", state.stale);
  const dd = state.drawdown;
  if (!dd) {
    el.textContent = "never simulated";
    return;
  }
  const face: Face = state.face;
  const colors = colorMatrix(dd, face);
  const slants = slantMatrix(dd, face);
  const table = document.createElement("div");
  table.className = "band-grid";
  table.style.gridTemplateColumns = `repeat(${dd.tablets}, 18px)`;
  colors.forEach((row, p) => {
    row.forEach((color, col) => {
      const cell = document.createElement("div");
      cell.className = "band-cell";
      cell.style.background = dd.palette[color];
      cell.dataset.slant = slants[p][col];
      cell.textContent = slants[p][col] === "|" ? "" : slants[p][col];
      cell.addEventListener("mouseenter", (ev) => {
        const c = cellAt(dd, face, p, col);
        const tablet = face === "front" ? col : dd.tablets - 1 - col;
        tooltip.hidden = false;
        tooltip.textContent =
          `tablet ${tablet + 1}, pick ${p + 1}: hole ${HOLE_LABELS[c.h]}, ` +
          `rotation ${c.r}, twist ${c.q}`;
        tooltip.style.left = `${(ev as MouseEvent).pageX + 12}px`;
        tooltip.style.top = `${(ev as MouseEvent).pageY + 12}px`;
        session.select(p, col);
      });
      cell.addEventListener("mouseleave", () => {
        tooltip.hidden = true;
      });
      table.appendChild(cell);
    });
  });
  el.appendChild(table);
}

export function renderTwist(el: HTMLElement, state: SessionState) {
  el.textContent = "";
  const dd = state.drawdown;
  if (!dd) return;
  const series = twistSeries(dd, TWIST_WARN_THRESHOLD);
  for (let t = 0; t < dd.tablets; t++) {
    const meter = document.createElement("div");
    meter.className = "twist-meter";
    const warned = series.firstWarningPick[t] !== null;
    meter.classList.toggle("twist-warn", warned);
    meter.title = warned
      ? `tablet ${t + 1}: max |twist| ${series.maxAbs[t]}, over ${series.threshold} from pick ${series.firstWarningPick[t]}`
      : `tablet ${t + 1}: max |twist| ${series.maxAbs[t]}`;
    meter.textContent = String(series.finalTwist[t]);
    el.appendChild(meter);
  }
}

export function renderAll(ui: ViewElements, state: SessionState, session: Session) {
  renderGutter(ui.gutter, state);
  renderBand(ui.band, state, session, ui.tooltip);
  renderTwist(ui.twist, state);
  ui.banner.hidden = state.banner === null;
  ui.banner.textContent = state.banner ?? "";
  ui.exampleBadge.hidden = state.exampleId === null;
  ui.exampleBadge.textContent = state.exampleId ?? "";
  ui.faceButtons.forEach((b) => b.classList.toggle("active", b.dataset.face === state.face));
}
