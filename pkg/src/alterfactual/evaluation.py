"""Corpus metrics, the deletion baseline, the noise trade-off study and the bias probe.

Also owns trace persistence: one JSONL record per document holding the full
generation trace, reports as JSON and as an aligned plain-text table.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np

from .generator import (
    AlterfactualResult,
    Backends,
    RejectedTrial,
    RunConfig,
    generate,
    generate_targeted,
    multi_mode,
)
from .opposites import OppositeRelation
from .oracles import (
    ClassifierOracle,
    OracleStats,
    PerplexityOracle,
    Verdict,
    classify,
)
from .textcore import Document, Substitution, Token, detokenize

# L2 gaps measured between pretrained 300-d GloVe embeddings of common
# opposite pairs; documented reference constants, not recomputed here.
GLOVE_OPPOSITE_L2_GAPS = {
    ("pretty", "ugly"): 3.9,
    ("monday", "tuesday"): 0.4,
    ("republicans", "democrats"): 1.3,
}


@dataclass
class MetricsReport:
    """Corpus-level metrics; success-conditioned means are None when nothing succeeded."""

    fid: float                 # % of documents with an alterfactual found
    awp: float | None          # mean accepted substitutions, over successes
    avq: float                 # mean classifier texts per document, over all documents
    oppl: float | None         # mean perplexity of originals, over all documents
    appl: float | None         # mean perplexity of altered texts, over successes
    sim: float | None          # mean final similarity, over successes
    con: float | None          # mean |delta predicted-class prob| in % points, over successes
    runtime: float             # mean seconds per document
    documents: int
    successes: int


def _mean(values: Sequence[float]) -> float:
    return sum(values) / len(values)


def metrics_from_results(
    results: Sequence[AlterfactualResult],
    perplexity: PerplexityOracle | None = None,
) -> MetricsReport:
    """Pure reduction of stored traces to a MetricsReport (no hidden state)."""
    attempted = [r for r in results if r.applicable]
    if not attempted:
        raise ValueError("metrics need at least one applicable document")
    successes = [r for r in attempted if r.success]

    con = None
    if successes:
        shifts = []
        for r in successes:
            pred = r.original_verdict.predicted
            shifts.append(100.0 * abs(r.final_verdict.probs[pred] - r.original_verdict.probs[pred]))
        con = _mean(shifts)

    oppl = appl = None
    if perplexity is not None:
        oppl = _mean([perplexity.perplexity(r.original.raw) for r in attempted])
        if successes:
            appl = _mean([perplexity.perplexity(r.altered.raw) for r in successes])

    return MetricsReport(
        fid=100.0 * len(successes) / len(attempted),
        awp=_mean([len(r.accepted) for r in successes]) if successes else None,
        avq=_mean([r.queries for r in attempted]),
        oppl=oppl,
        appl=appl,
        sim=_mean([r.similarity_final for r in successes]) if successes else None,
        con=con,
        runtime=_mean([r.runtime_s for r in attempted]),
        documents=len(attempted),
        successes=len(successes),
    )


@dataclass
class CorpusEvaluation:
    report: MetricsReport
    results: list[AlterfactualResult]


def evaluate_corpus(
    docs: Sequence[Document], cfg: RunConfig, backends: Backends
) -> CorpusEvaluation:
    """Run generation over a corpus and reduce the traces to metrics."""
    if not docs:
        raise ValueError("evaluate_corpus needs at least one document")
    results = [generate(doc, cfg, backends) for doc in docs]
    return CorpusEvaluation(
        report=metrics_from_results(results, backends.perplexity), results=results
    )


def input_reduction_baseline(
    doc: Document, cfg: RunConfig, backends: Backends
) -> AlterfactualResult:
    """Iteratively delete the least important word while the prediction holds.

    Importance is recomputed on the shrinking text after every deletion; the
    confidence gate is checked against the ORIGINAL verdict. Similarity is
    recorded for reporting but never enforced, and the text is never emptied.
    """
    t0 = time.perf_counter()
    stats = OracleStats()
    original_verdict = classify([doc.raw], backends.classifier, stats, cfg.batch_size)[0]
    pred = original_verdict.predicted
    c = original_verdict.confidence

    working = list(doc.tokens)
    original_pos = list(range(len(working)))
    cur_prob = original_verdict.probs[pred]
    deletions: list[Substitution] = []
    final_verdict = original_verdict

    while len(working) > 1:
        eligible = [j for j, t in enumerate(working) if not t.is_punct and not t.is_stopword]
        if not eligible:
            break
        texts = []
        for j in eligible:
            texts.append(detokenize([t.surface for i, t in enumerate(working) if i != j]))
        verdicts = classify(texts, backends.classifier, stats, cfg.batch_size)
        drops = [cur_prob - v.probs[pred] for v in verdicts]
        best = min(range(len(eligible)), key=lambda i: (drops[i], original_pos[eligible[i]]))
        verdict = verdicts[best]
        if not (verdict.predicted == pred and abs(verdict.probs[pred] - c) <= cfg.delta):
            break
        j = eligible[best]
        deletions.append(
            Substitution(
                position=original_pos[j],
                original=working[j].surface,
                replacement="",
                relation=None,
                provider="deletion",
            )
        )
        del working[j]
        del original_pos[j]
        cur_prob = verdict.probs[pred]
        final_verdict = verdict

    final_text = detokenize([t.surface for t in working])
    altered = backends.tokenizer.tokenize(final_text)
    return AlterfactualResult(
        original=doc,
        altered=altered,
        original_verdict=original_verdict,
        final_verdict=final_verdict,
        accepted=deletions,
        rejected=[],
        queries=stats.classifier_queries,
        success=bool(deletions),
        similarity_final=backends.similarity.similarity(doc.raw, final_text),
        displacement=len(deletions),
        runtime_s=time.perf_counter() - t0,
    )


@dataclass(frozen=True)
class NoiseTradeoffPoint:
    sigma: float
    flip_rate: float
    mean_sim: float
    mean_l2: float


def noise_tradeoff_experiment(
    vectors: Mapping[str, np.ndarray],
    sigma_grid: Sequence[float],
    trials: int,
    seed: int = 0,
) -> list[NoiseTradeoffPoint]:
    """Noise a word vector, snap to the nearest vocabulary vector, measure the damage.

    One set of sampled words and unit noises is shared across the whole sigma
    grid (common random numbers): nearest-neighbour cells are convex, so each
    trial's flip is monotone in sigma and the flip-rate curve is nondecreasing
    by construction, not just on average.
    """
    words = sorted(vectors)
    if len(words) < 2:
        raise ValueError("noise trade-off needs a vocabulary of at least 2 words")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if list(sigma_grid) != sorted(sigma_grid):
        raise ValueError("sigma_grid must be ascending")

    matrix = np.stack([np.asarray(vectors[w], dtype=float) for w in words])
    rng = np.random.default_rng(seed)
    word_idx = rng.integers(0, len(words), size=trials)
    unit_noise = rng.standard_normal((trials, matrix.shape[1]))

    norms = np.linalg.norm(matrix, axis=1)
    points = []
    for sigma in sigma_grid:
        noised = matrix[word_idx] + sigma * unit_noise
        dists = np.linalg.norm(noised[:, None, :] - matrix[None, :, :], axis=2)
        mapped = np.argmin(dists, axis=1)
        flips = mapped != word_idx
        dots = np.einsum("ij,ij->i", matrix[word_idx], matrix[mapped])
        denom = norms[word_idx] * norms[mapped]
        cos = np.where(denom > 0, dots / np.maximum(denom, 1e-30), 0.0)
        cos = np.where(flips, cos, 1.0)  # unflipped words are identical by definition
        l2 = np.linalg.norm(matrix[mapped] - matrix[word_idx], axis=1)
        points.append(
            NoiseTradeoffPoint(
                sigma=float(sigma),
                flip_rate=float(np.mean(flips)),
                mean_sim=float(np.mean(np.clip(cos, -1.0, 1.0))),
                mean_l2=float(np.mean(l2)),
            )
        )
    return points


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    if len(xs) != len(ys) or len(xs) < 3:
        raise ValueError("pearson needs >= 3 paired values")
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    xc = x - x.mean()
    yc = y - y.mean()
    denom = float(np.sqrt((xc**2).sum() * (yc**2).sum()))
    if denom == 0.0:
        raise ValueError("pearson undefined for zero-variance inputs")
    return float((xc * yc).sum() / denom)


@dataclass
class ProbeEntry:
    """One model's targeted strict fidelity plus what went into it."""

    model_id: str
    fidelity: float
    applicable: int
    strict_successes: int
    queries: int
    attribute: str
    swaps: tuple[tuple[str, str], ...] = ()


@dataclass
class BiasProbeReport:
    entries: list[ProbeEntry]
    correlation: float | None
    explanation_texts: list[str]
    external_scores: dict[str, float] | None = None


def render_explanation(entry: ProbeEntry) -> str:
    """Global 'no matter what' explanation text for one probed model."""
    swaps = ", ".join(f"{a}→{b}" for a, b in entry.swaps)
    if swaps:
        swaps += ", etc."
    else:
        swaps = "etc."
    return (
        f"No matter what we changed the {entry.attribute} mentioned in the input texts "
        f"(like {swaps}), the computer system's decisions remained the same for "
        f"{entry.fidelity:.1f}% of the time."
    )


def _default_swaps(target_words, backends: Backends, cap: int = 3) -> tuple[tuple[str, str], ...]:
    pairs = []
    if backends.provider is None:
        return ()
    for word in sorted(target_words):
        cands = backends.provider.opposites_for(word)
        if cands:
            pairs.append((word, cands[0].word))
        if len(pairs) >= cap:
            break
    return tuple(pairs)


def bias_probe(
    models: Sequence[tuple[str, ClassifierOracle]],
    docs: Sequence[Document],
    cfg: RunConfig,
    backends: Backends,
    external_scores: Mapping[str, float] | None = None,
    attribute: str = "attributes",
    swaps: Sequence[tuple[str, str]] | None = None,
) -> BiasProbeReport:
    """Targeted strict fidelity per model, with optional bias-score correlation.

    Runs generate_targeted in Multi mode (strict fidelity needs every target
    occurrence attempted). Pearson correlation against the external scores is
    computed only when at least 3 models carry one.
    """
    if not models:
        raise ValueError("bias_probe needs at least one model")
    if not cfg.target_words:
        raise ValueError("bias_probe needs cfg.target_words")
    cfg = multi_mode(cfg)
    swap_pairs = tuple(swaps) if swaps is not None else _default_swaps(cfg.target_words, backends)

    entries = []
    for model_id, classifier in models:
        model_backends = replace(backends, classifier=classifier)
        results = [generate_targeted(doc, cfg, model_backends) for doc in docs]
        applicable = [r for r in results if r.applicable]
        if not applicable:
            raise ValueError(
                f"no document contains a target word; probe for {model_id!r} is not applicable"
            )
        strict = sum(1 for r in applicable if r.strict_success)
        entries.append(
            ProbeEntry(
                model_id=model_id,
                fidelity=100.0 * strict / len(applicable),
                applicable=len(applicable),
                strict_successes=strict,
                queries=sum(r.queries for r in applicable),
                attribute=attribute,
                swaps=swap_pairs,
            )
        )

    correlation = None
    if external_scores:
        paired = [(e.fidelity, external_scores[e.model_id]) for e in entries
                  if e.model_id in external_scores]
        if len(paired) >= 3:
            correlation = pearson([p[0] for p in paired], [p[1] for p in paired])

    return BiasProbeReport(
        entries=entries,
        correlation=correlation,
        explanation_texts=[render_explanation(e) for e in entries],
        external_scores=dict(external_scores) if external_scores else None,
    )


def load_bias_scores(path) -> dict[str, float]:
    """External bias scores file: two whitespace-separated columns (model id, score)."""
    scores = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            parts = line.split()
            if not parts or parts[0].startswith("#"):
                continue
            if len(parts) != 2:
                raise ValueError(f"bias-scores line needs 'model score', got {line!r}")
            scores[parts[0]] = float(parts[1])
    return scores


# --- trace (de)serialization -------------------------------------------------

def _token_to_dict(t: Token) -> dict:
    return {
        "surface": t.surface,
        "normalized": t.normalized,
        "is_stopword": t.is_stopword,
        "pos": t.pos,
        "is_punct": t.is_punct,
    }


def _doc_to_dict(d: Document) -> dict:
    return {
        "raw": d.raw,
        "tokens": [_token_to_dict(t) for t in d.tokens],
        "sentence_bounds": [list(b) for b in d.sentence_bounds],
    }


def _doc_from_dict(data: dict) -> Document:
    return Document(
        raw=data["raw"],
        tokens=tuple(Token(**t) for t in data["tokens"]),
        sentence_bounds=tuple((b[0], b[1]) for b in data["sentence_bounds"]),
    )


def _sub_to_dict(s: Substitution) -> dict:
    relation = None
    if s.relation is not None:
        relation = {"kind": s.relation.kind, "weight": s.relation.weight}
    return {
        "position": s.position,
        "original": s.original,
        "replacement": s.replacement,
        "relation": relation,
        "provider": s.provider,
    }


def _sub_from_dict(data: dict) -> Substitution:
    relation = data.get("relation")
    return Substitution(
        position=data["position"],
        original=data["original"],
        replacement=data["replacement"],
        relation=OppositeRelation(**relation) if relation else None,
        provider=data.get("provider", ""),
    )


def result_to_dict(r: AlterfactualResult) -> dict:
    return {
        "original": _doc_to_dict(r.original),
        "altered": _doc_to_dict(r.altered),
        "original_verdict": list(r.original_verdict.probs) if r.original_verdict else None,
        "final_verdict": list(r.final_verdict.probs) if r.final_verdict else None,
        "accepted": [_sub_to_dict(s) for s in r.accepted],
        "rejected": [
            {"substitution": _sub_to_dict(t.substitution), "reason": t.reason}
            for t in r.rejected
        ],
        "queries": r.queries,
        "success": r.success,
        "similarity_final": r.similarity_final,
        "displacement": r.displacement,
        "strict_success": r.strict_success,
        "applicable": r.applicable,
        "aborted": r.aborted,
        "abort_reason": r.abort_reason,
    }


def result_from_dict(data: dict) -> AlterfactualResult:
    return AlterfactualResult(
        original=_doc_from_dict(data["original"]),
        altered=_doc_from_dict(data["altered"]),
        original_verdict=Verdict(tuple(data["original_verdict"])) if data["original_verdict"] else None,
        final_verdict=Verdict(tuple(data["final_verdict"])) if data["final_verdict"] else None,
        accepted=[_sub_from_dict(s) for s in data["accepted"]],
        rejected=[
            RejectedTrial(_sub_from_dict(t["substitution"]), t["reason"])
            for t in data["rejected"]
        ],
        queries=data["queries"],
        success=data["success"],
        similarity_final=data["similarity_final"],
        displacement=data["displacement"],
        strict_success=data.get("strict_success"),
        applicable=data.get("applicable", True),
        aborted=data.get("aborted", False),
        abort_reason=data.get("abort_reason"),
    )


def write_results_jsonl(path, results: Sequence[AlterfactualResult]) -> None:
    """One record per document: index, wall-clock timestamp, full trace."""
    with open(path, "w", encoding="utf-8") as fh:
        for i, result in enumerate(results):
            record = {"doc_index": i, "timestamp": time.time(), "result": result_to_dict(result)}
            fh.write(json.dumps(record) + "\n")


def read_results_jsonl(path) -> list[AlterfactualResult]:
    results = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                results.append(result_from_dict(json.loads(line)["result"]))
    return results


def report_to_dict(report: MetricsReport) -> dict:
    return {
        "fid": report.fid,
        "awp": report.awp,
        "avq": report.avq,
        "oppl": report.oppl,
        "appl": report.appl,
        "sim": report.sim,
        "con": report.con,
        "runtime": report.runtime,
        "documents": report.documents,
        "successes": report.successes,
    }


def render_report_table(report: MetricsReport) -> str:
    """Aligned plain-text metric table."""
    rows = [
        ("FID %", report.fid),
        ("AWP", report.awp),
        ("AVQ", report.avq),
        ("OPPL", report.oppl),
        ("APPL", report.appl),
        ("SIM", report.sim),
        ("CON %", report.con),
        ("Runtime s", report.runtime),
        ("Documents", report.documents),
        ("Successes", report.successes),
    ]
    lines = []
    for name, value in rows:
        if value is None:
            rendered = "-"
        elif isinstance(value, int):
            rendered = str(value)
        else:
            rendered = f"{value:.4f}"
        lines.append(f"{name:<10} {rendered:>12}")
    return "\n".join(lines)
