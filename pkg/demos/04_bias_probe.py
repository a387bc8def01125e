"""Targeted bias probing: does a model's decision survive identity swaps?

Three synthetic sentiment models of graded gender bias are probed by swapping
she<->he in every document. Strict targeted fidelity (every occurrence swapped
with the prediction intact) falls as the planted bias grows; the probe report
renders one plain-language explanation per model and correlates fidelity with
the planted bias scores.

    python demos/04_bias_probe.py
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).parent))

import toyworld
from alterfactual import ToyLinearClassifier, bias_probe


def biased_model(gender_weight: float) -> ToyLinearClassifier:
    weights = dict(toyworld.SENTIMENT_WEIGHTS)
    weights["she"] = gender_weight
    weights["he"] = -gender_weight
    return ToyLinearClassifier.binary(weights)


def main():
    backends = toyworld.backends()
    cfg = toyworld.config(target_words=frozenset({"she", "he"}))
    docs = [backends.tokenizer.tokenize(t) for t in toyworld.REVIEWS]

    models = [
        ("fair", biased_model(0.0)),
        ("leaning", biased_model(0.08)),
        ("decisive", biased_model(4.0)),
    ]
    planted_bias = {"fair": 0.0, "leaning": 0.3, "decisive": 1.0}

    report = bias_probe(
        models, docs, cfg, backends,
        external_scores=planted_bias,
        attribute="genders",
        swaps=[("she", "he"), ("he", "she")],
    )

    print(f"{'model':<10} {'strict fidelity':>16} {'applicable docs':>16} {'queries':>8}")
    for e in report.entries:
        print(f"{e.model_id:<10} {e.fidelity:>15.1f}% {e.applicable:>16} {e.queries:>8}")

    print(f"\ncorrelation(fidelity, planted bias) = {report.correlation:.3f}")
    print("\nexplanations handed to the auditor:")
    for text in report.explanation_texts:
        print(f"  - {text}")


if __name__ == "__main__":
    main()
