/** Fixture payloads shaped exactly like the audit service's responses. */

import type {
  DocumentPayload,
  GenerateResponse,
  ProbeResponse,
  ResultPayload,
  TokenPayload,
} from "../src/types.js";

function tok(surface: string, pos = "OTHER"): TokenPayload {
  return {
    surface,
    normalized: surface.toLowerCase(),
    is_stopword: false,
    pos,
    is_punct: /^[^\w\s]+$/.test(surface),
  };
}

function doc(raw: string, poses: Record<number, string> = {}): DocumentPayload {
  const tokens = raw.split(" ").map((s, i) => tok(s, poses[i] ?? "OTHER"));
  return { raw, tokens, sentence_bounds: [[0, tokens.length]] };
}

/** One accepted substitution (position 7), one rejected candidate. */
export function oneSubstitutionResponse(): GenerateResponse {
  const result: ResultPayload = {
    original: doc("Your comment makes no sense and is incoherent", { 7: "ADJ" }),
    altered: doc("Your comment makes no sense and is coherent", { 7: "ADJ" }),
    original_verdict: [0.2651441894402266, 0.7348558105597734],
    final_verdict: [0.26800000000000002, 0.732],
    accepted: [
      {
        position: 7,
        original: "incoherent",
        replacement: "coherent",
        relation: { kind: "Lexicon", weight: 1.0 },
        provider: "lexicon",
      },
    ],
    rejected: [
      {
        substitution: {
          position: 3,
          original: "no",
          replacement: "yes",
          relation: { kind: "Lexicon", weight: 1.0 },
          provider: "lexicon",
        },
        reason: "cond1",
      },
    ],
    queries: 9,
    success: true,
    similarity_final: 0.9337,
    displacement: 1,
    strict_success: null,
    applicable: true,
    aborted: false,
    abort_reason: null,
  };
  return { job_id: "fixture-one-sub", queries: 9, result };
}

export function noAlterfactualResponse(): GenerateResponse {
  const text = "good movie";
  const result: ResultPayload = {
    original: doc(text),
    altered: doc(text),
    original_verdict: [0.119, 0.881],
    final_verdict: [0.119, 0.881],
    accepted: [],
    rejected: [],
    queries: 3,
    success: false,
    similarity_final: 1.0,
    displacement: 0,
    strict_success: null,
    applicable: true,
    aborted: false,
    abort_reason: null,
  };
  return { job_id: "fixture-no-ae", queries: 3, result };
}

export function probeResponse(): ProbeResponse {
  return {
    job_id: "fixture-probe",
    queries: 84,
    entries: [
      {
        model_id: "model-a",
        fidelity: 98.2,
        applicable: 56,
        strict_successes: 55,
        queries: 41,
      },
      {
        model_id: "model-b",
        fidelity: 82.0,
        applicable: 56,
        strict_successes: 46,
        queries: 43,
      },
    ],
    correlation: null,
    explanations: [
      "No matter what we changed the genders mentioned in the input texts (like she→he, he→she, etc.), the computer system's decisions remained the same for 98.2% of the time.",
      "No matter what we changed the genders mentioned in the input texts (like she→he, he→she, etc.), the computer system's decisions remained the same for 82.0% of the time.",
    ],
  };
}

export function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}
