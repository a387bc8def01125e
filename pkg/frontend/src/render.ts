/**
 * HTML renderers for the probe and comparison views.
 *
 * Pure string builders: payload numbers are stringified verbatim (String(n)),
 * all free text is escaped, and nothing is recomputed from the trace.
 */

import type { ApiError } from "./api.js";
import { buildTokenDiff, confidenceGauge } from "./diff.js";
import type { GenerateResponse, ProbeEntryPayload, ProbeResponse } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

function span(cls: string, inner: string): string {
  return `<span class="${cls}">${inner}</span>`;
}

export function renderProbeView(response: GenerateResponse): string {
  const result = response.result;
  const parts: string[] = ['<section class="probe-result">'];

  if (result.aborted) {
    parts.push(
      `<div class="banner error">backend aborted: ${escapeHtml(result.abort_reason ?? "unknown")}</div>`,
    );
  }

  if (!result.success) {
    parts.push('<div class="no-alterfactual">no alterfactual found</div>');
  } else {
    const cells = buildTokenDiff(result).map((cell) => {
      if (!cell.changed) return span("tok", escapeHtml(cell.after));
      return span(
        "tok swap",
        `<del>${escapeHtml(cell.before)}</del><ins>${escapeHtml(cell.after)}</ins>`,
      );
    });
    parts.push(`<p class="diff">${cells.join(" ")}</p>`);
  }

  const gauge = confidenceGauge(result);
  if (gauge) {
    parts.push(
      '<div class="confidence-gauge">' +
        `<span class="before" data-value="${String(gauge.before)}">${String(gauge.before)}</span>` +
        ' → ' +
        `<span class="after" data-value="${String(gauge.after)}">${String(gauge.after)}</span>` +
        ` <span class="delta" data-value="${String(gauge.delta)}">Δ ${String(gauge.delta)}</span>` +
        "</div>",
    );
  }

  parts.push(`<div class="queries">classifier queries: ${String(response.queries)}</div>`);
  parts.push(
    `<div class="similarity">similarity to original: ${String(result.similarity_final)}</div>`,
  );
  if (result.strict_success !== null) {
    parts.push(
      `<div class="strict">all target occurrences swapped: ${result.strict_success ? "yes" : "no"}</div>`,
    );
  }

  if (result.rejected.length > 0) {
    const items = result.rejected.map((trial) => {
      const sub = trial.substitution;
      return (
        "<li>" +
        `${escapeHtml(sub.original)} → ${escapeHtml(sub.replacement)} ` +
        span("reason", escapeHtml(trial.reason)) +
        "</li>"
      );
    });
    parts.push(`<details class="rejected"><summary>rejected candidates (${String(result.rejected.length)})</summary><ul>${items.join("")}</ul></details>`);
  }

  parts.push("</section>");
  return parts.join("\n");
}

export interface ComparisonSide {
  endpointUrl: string;
  entry?: ProbeEntryPayload;
  explanation?: string;
  error?: ApiError;
}

function renderFidelityBar(entry: ProbeEntryPayload): string {
  return (
    '<div class="fidelity-bar">' +
    `<div class="bar" style="width: ${String(entry.fidelity)}%"></div>` +
    `<span class="label" data-value="${String(entry.fidelity)}">${escapeHtml(entry.model_id)}: ${String(entry.fidelity)}%</span>` +
    "</div>"
  );
}

export function renderComparisonView(sides: ComparisonSide[]): string {
  const parts: string[] = ['<section class="comparison">'];
  const fidelities = sides
    .filter((s) => s.entry !== undefined)
    .map((s) => s.entry!.fidelity);
  if (fidelities.length >= 2 && fidelities.every((f) => f === fidelities[0])) {
    parts.push('<div class="badge tie">tie</div>');
  }
  for (const side of sides) {
    parts.push('<article class="model-column">');
    parts.push(`<h3>${escapeHtml(side.endpointUrl)}</h3>`);
    if (side.error) {
      parts.push(`<div class="badge error">${escapeHtml(side.error.provenance)}</div>`);
    } else if (side.entry) {
      parts.push(renderFidelityBar(side.entry));
      parts.push(`<div class="queries">queries: ${String(side.entry.queries)}</div>`);
      if (side.explanation !== undefined) {
        parts.push(`<blockquote class="explanation">${escapeHtml(side.explanation)}</blockquote>`);
      }
    }
    parts.push("</article>");
  }
  parts.push("</section>");
  return parts.join("\n");
}

export function comparisonSidesFromProbe(
  endpoints: { id: string; url: string }[],
  response: ProbeResponse,
): ComparisonSide[] {
  return endpoints.map((endpoint) => {
    const index = response.entries.findIndex((e) => e.model_id === endpoint.id);
    return {
      endpointUrl: `${endpoint.id} @ ${endpoint.url}`,
      entry: index >= 0 ? response.entries[index] : undefined,
      explanation: index >= 0 ? response.explanations[index] : undefined,
    };
  });
}

export function renderErrorBanner(error: ApiError): string {
  return `<div class="banner error">${escapeHtml(error.provenance)}</div>`;
}
