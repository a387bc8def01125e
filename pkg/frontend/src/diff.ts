/**
 * Token-level diff model between the original and altered documents.
 *
 * Substitutions never change the token count, so the diff is a positional
 * zip; a cell is highlighted exactly when its position carries an accepted
 * substitution in the payload.
 */

import type { ResultPayload } from "./types.js";

export interface DiffCell {
  position: number;
  before: string;
  after: string;
  changed: boolean;
}

export function buildTokenDiff(result: ResultPayload): DiffCell[] {
  const before = result.original.tokens;
  const after = result.altered.tokens;
  if (before.length !== after.length) {
    throw new Error(
      `token count mismatch: ${before.length} original vs ${after.length} altered`,
    );
  }
  const accepted = new Set(result.accepted.map((s) => s.position));
  return before.map((token, i) => ({
    position: i,
    before: token.surface,
    after: after[i]!.surface,
    changed: accepted.has(i),
  }));
}

export interface ConfidenceGauge {
  /** index of the class the model originally predicted */
  predicted: number;
  before: number;
  after: number;
  delta: number;
}

/** Predicted-class probability before and after, straight from the payload. */
export function confidenceGauge(result: ResultPayload): ConfidenceGauge | null {
  const orig = result.original_verdict;
  const fin = result.final_verdict;
  if (!orig || !fin) return null;
  let predicted = 0;
  for (let i = 1; i < orig.length; i++) {
    if (orig[i]! > orig[predicted]!) predicted = i;
  }
  const before = orig[predicted]!;
  const after = fin[predicted]!;
  return { predicted, before, after, delta: after - before };
}
