// Live-coding session logic, kept DOM-free so it is testable headless.
//
// Editing debounces a simulate call (250 ms); newer edits abort or
// supersede older in-flight requests. A failed simulate never blanks the
// band: the last good drawdown stays visible, flagged stale so the view
// can dim it. Transport failures raise a banner and leave editing usable.

import type { Transport } from "./api.js";
import type { DiagnosticJson, DrawdownJson, Face } from "./types.js";

export interface SessionState {
  source: string;
  drawdown: DrawdownJson | null; // last good simulation, possibly stale
  stale: boolean;
  diagnostics: DiagnosticJson[];
  face: Face;
  exampleId: string | null;
  banner: string | null;
  selected: { pick: number; column: number } | null;
}

export const DEBOUNCE_MS = 250;

type Scheduler = {
  set(fn: () => void, ms: number): unknown;
  clear(handle: unknown): void;
};

const defaultScheduler: Scheduler = {
  set: (fn, ms) => setTimeout(fn, ms),
  clear: (h) => clearTimeout(h as ReturnType<typeof setTimeout>),
};

export class Session {
  state: SessionState = {
    source: "",
    drawdown: null,
    stale: false,
    diagnostics: [],
    face: "front",
    exampleId: null,
    banner: null,
    selected: null,
  };

  private timer: unknown = null;
  private generation = 0;
  private controller: AbortController | null = null;

  constructor(
    private transport: Transport,
    private onChange: (state: SessionState) => void,
    private scheduler: Scheduler = defaultScheduler,
    private debounceMs: number = DEBOUNCE_MS,
  ) {}

  private emit() {
    this.onChange(this.state);
  }

  onEdit(source: string, fromExample = false) {
    this.state.source = source;
    if (!fromExample) this.state.exampleId = null; // session is user-owned now
    if (this.timer !== null) this.scheduler.clear(this.timer);
    this.timer = this.scheduler.set(() => void this.simulateNow(), this.debounceMs);
    this.emit();
  }

  async simulateNow(): Promise<void> {
    const gen = ++this.generation;
    this.controller?.abort();
    this.controller = new AbortController();
    const source = this.state.source;
    let result;
    try {
      result = await this.transport.simulate(source, this.controller.signal);
    } catch (err) {
      if (gen !== this.generation) return; // superseded
      this.state.banner = `simulate service unreachable: ${String(err)}`;
      this.emit();
      return;
    }
    if (gen !== this.generation) return;
    this.state.banner = null;
    if (result.ok) {
      this.state.drawdown = result.drawdown;
      this.state.stale = false;
      this.state.diagnostics = [];
      this.state.selected = null;
    } else {
      this.state.diagnostics = result.diagnostics;
      this.state.stale = this.state.drawdown !== null;
    }
    this.emit();
  }

  async loadExample(id: string): Promise<void> {
    let examples;
    try {
      examples = await this.transport.examples();
    } catch (err) {
      this.state.banner = `catalog unreachable: ${String(err)}`;
      this.emit();
      return;
    }
    const entry = examples.find((e) => e.id === id);
    if (!entry) {
      this.state.banner = `unknown example "${id}"`;
      this.emit();
      return;
    }
    this.state.banner = null;
    this.state.exampleId = id;
    this.onEdit(entry.source, true);
  }

  setFace(face: Face) {
    this.state.face = face;
    this.emit();
  }

  select(pick: number, column: number) {
    this.state.selected = { pick, column };
    this.emit();
  }

  diagnosticsForLine(line: number): DiagnosticJson[] {
    return this.state.diagnostics.filter((d) => d.line === line);
  }
}
