import { describe, expect, it } from "vitest";

import { buildTokenDiff, confidenceGauge } from "../src/diff.js";
import { noAlterfactualResponse, oneSubstitutionResponse } from "./fixtures.js";

describe("buildTokenDiff", () => {
  it("marks exactly the accepted positions as changed", () => {
    const diff = buildTokenDiff(oneSubstitutionResponse().result);
    const changed = diff.filter((c) => c.changed);
    expect(changed).toHaveLength(1);
    expect(changed[0]).toEqual({
      position: 7,
      before: "incoherent",
      after: "coherent",
      changed: true,
    });
  });

  it("keeps every unchanged token byte-identical", () => {
    const diff = buildTokenDiff(oneSubstitutionResponse().result);
    for (const cell of diff.filter((c) => !c.changed)) {
      expect(cell.before).toBe(cell.after);
    }
  });

  it("yields no changed cells when nothing was accepted", () => {
    const diff = buildTokenDiff(noAlterfactualResponse().result);
    expect(diff.every((c) => !c.changed)).toBe(true);
  });

  it("rejects structurally mismatched documents", () => {
    const result = oneSubstitutionResponse().result;
    const broken = {
      ...result,
      altered: { ...result.altered, tokens: result.altered.tokens.slice(1) },
    };
    expect(() => buildTokenDiff(broken)).toThrow(/token count mismatch/);
  });
});

describe("confidenceGauge", () => {
  it("reads predicted-class probabilities verbatim from the payload", () => {
    const payload = oneSubstitutionResponse();
    const gauge = confidenceGauge(payload.result)!;
    expect(gauge.predicted).toBe(1);
    expect(gauge.before).toBe(payload.result.original_verdict![1]);
    expect(gauge.after).toBe(payload.result.final_verdict![1]);
    expect(gauge.delta).toBe(gauge.after - gauge.before);
  });

  it("is null when verdicts are missing (not-applicable results)", () => {
    const result = { ...oneSubstitutionResponse().result, original_verdict: null };
    expect(confidenceGauge(result)).toBeNull();
  });
});
