// Thin client for the local simulate service.

import type { DiagnosticJson, DrawdownJson, ExampleJson, SimulateResult } from "./types.js";

export interface Transport {
  simulate(source: string, signal?: AbortSignal): Promise<SimulateResult>;
  examples(): Promise<ExampleJson[]>;
}

export function httpTransport(baseUrl: string): Transport {
  return {
    async simulate(source, signal) {
      const resp = await fetch(`${baseUrl}/simulate`, {
        method: "POST",
        body: source,
        signal,
      });
      if (resp.status === 200) {
        return { ok: true, drawdown: (await resp.json()) as DrawdownJson };
      }
      return { ok: false, diagnostics: (await resp.json()) as DiagnosticJson[] };
    },
    async examples() {
      const resp = await fetch(`${baseUrl}/examples`);
      if (!resp.ok) throw new Error(`examples: HTTP ${resp.status}`);
      return (await resp.json()) as ExampleJson[];
    },
  };
}
