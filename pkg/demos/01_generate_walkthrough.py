"""Walk through one alterfactual generation, step by step.

Shows the importance ranking, every candidate trial with its accept/reject
reason, and the final 'no matter what' example with its confidence shift.

    python demos/01_generate_walkthrough.py
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).parent))

import toyworld
from alterfactual import generate, importance_scores

LABELS = {0: "negative", 1: "positive"}


def main():
    backends = toyworld.backends()
    cfg = toyworld.config()
    text = "She watched the movie on monday evening and it was really good"
    doc = backends.tokenizer.tokenize(text)

    print(f"input: {text!r}")
    verdict = backends.classifier.predict_probs([text])[0]
    print(f"toy sentiment model says: {LABELS[verdict.index(max(verdict))]} "
          f"(p = {max(verdict):.3f})\n")

    ranking = importance_scores(doc, backends.classifier)
    print("leave-one-out importance, least relevant first:")
    for pos in ranking.order:
        print(f"  {doc.tokens[pos].surface:<10} importance {ranking.scores[pos]:+.4f}")

    result = generate(doc, cfg, backends)
    print("\ncandidate trials:")
    for trial in result.rejected:
        sub = trial.substitution
        print(f"  REJECT {sub.original:>8} -> {sub.replacement:<8} ({trial.reason})")
    for sub in result.accepted:
        print(f"  ACCEPT {sub.original:>8} -> {sub.replacement:<8} "
              f"(relation {sub.relation.kind})")

    print(f"\nalterfactual: {result.altered.raw!r}")
    print(f"prediction unchanged: {result.final_verdict.predicted == result.original_verdict.predicted}")
    shift = abs(result.final_verdict.confidence - result.original_verdict.confidence)
    print(f"confidence shift: {shift:.4f} (bound {cfg.delta})")
    print(f"similarity to original: {result.similarity_final:.3f} (bound {cfg.epsilon})")
    print(f"classifier texts spent: {result.queries}")
    print(f"words substituted: {result.displacement}")


if __name__ == "__main__":
    main()
