/**
 * Browser wiring: bind the form controls to the API client, render results,
 * and keep the submit button disabled while a probe is in flight.
 */

import { ApiClient, ApiError } from "./api.js";
import {
  comparisonSidesFromProbe,
  renderComparisonView,
  renderErrorBanner,
  renderProbeView,
} from "./render.js";
import { SessionState } from "./state.js";
import type { ModelEndpoint, TargetPair } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function parseTargets(rawText: string): TargetPair[] {
  return rawText
    .split(/[\n,;]+/)
    .map((row) => row.trim())
    .filter(Boolean)
    .map((row) => {
      const parts = row.split(/[\s:>]+/).filter(Boolean);
      if (parts.length !== 2) throw new Error(`target row needs 'word opposite': ${row}`);
      return [parts[0]!.toLowerCase(), parts[1]!.toLowerCase()] as TargetPair;
    });
}

export function boot(): void {
  const state = new SessionState();
  const output = el<HTMLDivElement>("output");
  const historyList = el<HTMLUListElement>("history");
  const runButton = el<HTMLButtonElement>("run");
  const compareButton = el<HTMLButtonElement>("compare");

  const serviceUrl = () => el<HTMLInputElement>("service-url").value.trim();

  function refreshHistory(): void {
    historyList.innerHTML = state.history
      .map((entry) => `<li>#${entry.seq} ${entry.action.kind}</li>`)
      .join("");
  }

  async function withProbe(run: () => Promise<string>): Promise<void> {
    state.beginProbe();
    runButton.disabled = true;
    compareButton.disabled = true;
    try {
      output.innerHTML = await run();
    } catch (exc) {
      const error = exc instanceof ApiError ? exc : new ApiError(0, null, String(exc));
      output.innerHTML = renderErrorBanner(error);
    } finally {
      state.endProbe();
      runButton.disabled = false;
      compareButton.disabled = false;
      refreshHistory();
    }
  }

  runButton.addEventListener("click", () => {
    void withProbe(async () => {
      const client = new ApiClient(serviceUrl());
      state.currentText = el<HTMLTextAreaElement>("text").value;
      state.selectedTargets = parseTargets(el<HTMLTextAreaElement>("targets").value);
      const response = state.selectedTargets.length
        ? await client.targeted(state.currentText, state.selectedTargets)
        : await client.generate(state.currentText);
      state.record(
        state.selectedTargets.length
          ? { kind: "targeted", text: state.currentText, targets: state.selectedTargets }
          : { kind: "generate", text: state.currentText },
        response,
      );
      return renderProbeView(response);
    });
  });

  compareButton.addEventListener("click", () => {
    void withProbe(async () => {
      const client = new ApiClient(serviceUrl());
      const models: ModelEndpoint[] = [
        { id: "model-a", url: el<HTMLInputElement>("model-a").value.trim() },
        { id: "model-b", url: el<HTMLInputElement>("model-b").value.trim() },
      ].filter((m) => m.url.length > 0);
      state.setEndpoints(models);
      const texts = el<HTMLTextAreaElement>("corpus")
        .value.split("\n")
        .map((t) => t.trim())
        .filter(Boolean);
      const targets = parseTargets(el<HTMLTextAreaElement>("targets").value);
      const attribute = el<HTMLInputElement>("attribute").value.trim() || "attributes";
      const response = await client.probe(models, texts, targets, attribute);
      state.record({ kind: "compare", texts, targets, models }, response);
      return renderComparisonView(comparisonSidesFromProbe(models, response));
    });
  });
}

if (typeof document !== "undefined" && document.readyState !== "loading") {
  boot();
} else if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", boot);
}
