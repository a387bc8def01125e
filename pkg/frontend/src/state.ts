/**
 * Session state for one auditor: current inputs, chosen endpoints, and an
 * append-only history from which every probe can be replayed.
 */

import type { GenerateResponse, ModelEndpoint, ProbeResponse, TargetPair } from "./types.js";

export type ProbeAction =
  | { kind: "generate"; text: string }
  | { kind: "targeted"; text: string; targets: TargetPair[] }
  | { kind: "compare"; texts: string[]; targets: TargetPair[]; models: ModelEndpoint[] };

export interface HistoryEntry {
  readonly seq: number;
  readonly at: number;
  readonly action: ProbeAction;
  readonly response: GenerateResponse | ProbeResponse | { error: string };
}

export class SessionState {
  currentText = "";
  selectedTargets: TargetPair[] = [];
  lastResult: GenerateResponse | null = null;

  private endpoints: ModelEndpoint[] = [];
  private readonly entries: HistoryEntry[] = [];
  private inFlight = false;
  private seq = 0;

  /** At most two model endpoints can be under comparison. */
  setEndpoints(endpoints: ModelEndpoint[]): void {
    if (endpoints.length > 2) {
      throw new Error(`at most 2 model endpoints, got ${endpoints.length}`);
    }
    this.endpoints = [...endpoints];
  }

  getEndpoints(): ModelEndpoint[] {
    return [...this.endpoints];
  }

  /** One probe at a time: callers disable submit between begin and end. */
  beginProbe(): void {
    if (this.inFlight) throw new Error("a probe is already running");
    this.inFlight = true;
  }

  endProbe(): void {
    this.inFlight = false;
  }

  get probeRunning(): boolean {
    return this.inFlight;
  }

  record(action: ProbeAction, response: HistoryEntry["response"]): HistoryEntry {
    const entry: HistoryEntry = Object.freeze({
      seq: this.seq++,
      at: Date.now(),
      action: structuredCloneCompat(action),
      response: structuredCloneCompat(response),
    });
    this.entries.push(entry);
    if ("result" in (response as object)) {
      this.lastResult = response as GenerateResponse;
    }
    return entry;
  }

  /** Append-only view; indices are stable for the life of the session. */
  get history(): readonly HistoryEntry[] {
    return this.entries;
  }

  /** The actions needed to reproduce this session, oldest first. */
  replayActions(): ProbeAction[] {
    return this.entries.map((e) => structuredCloneCompat(e.action));
  }
}

function structuredCloneCompat<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}
