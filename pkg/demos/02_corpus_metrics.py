"""Corpus-level evaluation: substitution search vs the word-deletion baseline.

Computes FID/AWP/AVQ/OPPL/APPL/SIM/CON over a small review corpus, in Single
and Multi mode, then runs the deletion baseline and shows how it hollows out
the sentences (lower similarity) even though it finds "successes" more easily.

    python demos/02_corpus_metrics.py
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).parent))

import toyworld
from alterfactual import (
    evaluate_corpus,
    input_reduction_baseline,
    metrics_from_results,
    render_report_table,
)


def main():
    backends = toyworld.backends()
    docs = [backends.tokenizer.tokenize(t) for t in toyworld.REVIEWS]

    for mode in ("single", "multi"):
        cfg = toyworld.config(mode=mode)
        ev = evaluate_corpus(docs, cfg, backends)
        print(f"=== substitution search, {mode} mode ===")
        print(render_report_table(ev.report))
        print()

    cfg = toyworld.config()
    baseline_results = [input_reduction_baseline(d, cfg, backends) for d in docs]
    report = metrics_from_results(baseline_results, backends.perplexity)
    print("=== deletion baseline (similarity recorded, not enforced) ===")
    print(render_report_table(report))
    print()
    for doc, result in zip(docs, baseline_results):
        print(f"  {doc.raw!r}")
        print(f"    -> {result.altered.raw!r}  (deleted {result.displacement}, "
              f"sim {result.similarity_final:.3f})")


if __name__ == "__main__":
    main()
