"""Greedy alterfactual search: rank words by irrelevance, substitute opposites.

Words are ranked ascending by leave-one-out importance (probability drop of
the predicted class when the word is removed). Walking that ranking, each
word's opposite candidates are tried in provider order; a candidate is
accepted only when it keeps the part of speech, introduces no new double
negative, leaves the predicted class and its probability within delta of the
original, and keeps sentence similarity to the original at or above epsilon.
Accepted substitutions accumulate in the working text. Single mode stops at
the first acceptance; Multi walks the whole ranking.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Callable

from .errors import (
    ContractViolationError,
    EmptyRankingError,
    LlmParseError,
    OracleTransportError,
    ProviderUnavailableError,
    UndefinedSimilarityError,
)
from .negation import NegationConfig, introduces_double_negative, sentence_double_flags
from .opposites import LlmClient, OppositeCandidate, llm_opposites
from .oracles import (
    ClassifierOracle,
    NegativityOracle,
    OracleStats,
    PerplexityOracle,
    SimilarityOracle,
    Verdict,
    classify,
)
from .textcore import (
    Document,
    Substitution,
    Tokenizer,
    apply_substitutions,
    delete_tokens,
    pos_compatible,
)

PROVIDERS = ("conceptnet", "llm", "lexicon")
MODES = ("single", "multi")

# Backend failures abort the current document, never the whole run.
# Undefined similarity (a fully out-of-vocabulary document) counts as one:
# the document cannot be audited, the corpus run continues.
BACKEND_FAILURES = (
    OracleTransportError,
    ProviderUnavailableError,
    LlmParseError,
    ContractViolationError,
    UndefinedSimilarityError,
)


@dataclass(frozen=True)
class RunConfig:
    """All thresholds and modes of one audit run."""

    delta: float = 0.05                # max confidence shift
    epsilon: float = 0.8               # min similarity to the original text
    max_words: int | None = None       # examine at most this many ranked words; None = unbounded
    mode: str = "multi"
    omega_t: float = 0.5         # ConceptNet relation weight threshold
    negation: NegationConfig = field(default_factory=NegationConfig)
    provider: str = "lexicon"
    target_words: frozenset[str] | None = None
    batch_size: int = 32
    # resource paths, resolved into live backends by the service layer
    stopwords_path: str | None = None
    pos_lexicon_path: str | None = None
    vectors_path: str | None = None
    unigrams_path: str | None = None
    negation_lexicon_path: str | None = None
    opposites_lexicon_path: str | None = None
    cache_path: str | None = None

    def __post_init__(self):
        if not 0 < self.delta < 1:
            raise ValueError(f"delta must be in (0, 1), got {self.delta}")
        if not 0 < self.epsilon <= 1:
            raise ValueError(f"epsilon must be in (0, 1], got {self.epsilon}")
        if self.max_words is not None and self.max_words < 1:
            raise ValueError(f"max_words must be >= 1 when bounded, got {self.max_words}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.provider not in PROVIDERS:
            raise ValueError(f"provider must be one of {PROVIDERS}, got {self.provider!r}")
        if self.omega_t < 0:
            raise ValueError(f"omega_t must be >= 0, got {self.omega_t}")
        if self.target_words is not None:
            object.__setattr__(
                self, "target_words", frozenset(w.lower() for w in self.target_words)
            )


@dataclass
class Backends:
    """Live oracle and provider objects for one run."""

    tokenizer: Tokenizer
    classifier: ClassifierOracle
    similarity: SimilarityOracle
    negativity: NegativityOracle
    provider: object | None = None        # word -> ordered opposite candidates
    llm: LlmClient | None = None          # per-sentence opposite plan
    perplexity: PerplexityOracle | None = None

    def provider_id(self) -> str:
        return getattr(self.provider, "provider_id", "llm" if self.llm else "unknown")


@dataclass
class ImportanceRanking:
    """Leave-one-out scores and the ascending-importance visiting order."""

    scores: dict[int, float]
    order: list[int]


@dataclass(frozen=True)
class RejectedTrial:
    substitution: Substitution
    reason: str  # pos | double_negative | cond1 | cond2 | cond1+cond2


@dataclass
class AlterfactualResult:
    """Accepted/rejected substitution trace plus the final text and verdicts."""

    original: Document
    altered: Document
    original_verdict: Verdict | None
    final_verdict: Verdict | None
    accepted: list[Substitution] = field(default_factory=list)
    rejected: list[RejectedTrial] = field(default_factory=list)
    queries: int = 0
    success: bool = False
    similarity_final: float = 1.0
    displacement: int = 0
    strict_success: bool | None = None   # targeted runs only
    applicable: bool = True              # False: targeted run, no target word present
    aborted: bool = False
    abort_reason: str | None = None
    runtime_s: float = 0.0


def eligible_positions(doc: Document, target_words: frozenset[str] | None = None) -> list[int]:
    """Perturbable token positions. Targeted mode keys on target membership alone
    (punctuation stays excluded); otherwise stopwords and punctuation are skipped."""
    if target_words is not None:
        return [i for i, t in enumerate(doc.tokens)
                if not t.is_punct and t.normalized in target_words]
    return [i for i, t in enumerate(doc.tokens) if not t.is_punct and not t.is_stopword]


def importance_scores(
    doc: Document,
    oracle: ClassifierOracle,
    stats: OracleStats | None = None,
    target_words: frozenset[str] | None = None,
    original: Verdict | None = None,
    batch_size: int = 32,
) -> ImportanceRanking:
    """Leave-one-out importances, sorted ascending with position tie-break.

    Sends exactly 1 + k classifier texts (k = eligible tokens); passing a
    precomputed original verdict drops the leading 1.
    """
    eligible = eligible_positions(doc, target_words)
    if not eligible:
        raise EmptyRankingError(f"no eligible tokens in {doc.raw!r}")
    if original is None:
        original = classify([doc.raw], oracle, stats, batch_size)[0]
    pred = original.predicted
    reduced_texts = [delete_tokens(doc, [i]).raw for i in eligible]
    verdicts = classify(reduced_texts, oracle, stats, batch_size)
    scores = {
        i: original.probs[pred] - v.probs[pred] for i, v in zip(eligible, verdicts)
    }
    order = sorted(eligible, key=lambda i: (scores[i], i))
    return ImportanceRanking(scores=scores, order=order)


def _candidate_fn(
    doc: Document, cfg: RunConfig, backends: Backends
) -> Callable[[int], list[OppositeCandidate]]:
    if cfg.provider == "llm":
        if backends.llm is None:
            raise ValueError("provider 'llm' needs backends.llm")
        plan = llm_opposites(doc, backends.llm)

        def from_plan(pos: int) -> list[OppositeCandidate]:
            cand = plan.by_position.get(pos)
            return [cand] if cand else []

        return from_plan

    if backends.provider is None:
        raise ValueError(f"provider {cfg.provider!r} needs backends.provider")

    def from_provider(pos: int) -> list[OppositeCandidate]:
        return backends.provider.opposites_for(doc.tokens[pos].normalized)

    return from_provider


def generate(doc: Document, cfg: RunConfig, backends: Backends) -> AlterfactualResult:
    """Produce an alterfactual example for one document (the greedy search)."""
    t0 = time.perf_counter()
    stats = OracleStats()
    result = AlterfactualResult(
        original=doc, altered=doc, original_verdict=None, final_verdict=None
    )
    provider_id = backends.provider_id()

    try:
        original_verdict = classify([doc.raw], backends.classifier, stats, cfg.batch_size)[0]
        result.original_verdict = original_verdict
        result.final_verdict = original_verdict
        pred = original_verdict.predicted
        c = original_verdict.confidence

        eligible = eligible_positions(doc, cfg.target_words)
        if eligible:
            candidates_at = _candidate_fn(doc, cfg, backends)
            ranking = importance_scores(
                doc, backends.classifier, stats, cfg.target_words,
                original=original_verdict, batch_size=cfg.batch_size,
            )
            original_flags = sentence_double_flags(doc, cfg.negation, backends.negativity)

            working = doc
            examined = 0
            stop = False
            for pos in ranking.order:
                if stop or (cfg.max_words is not None and examined >= cfg.max_words):
                    break
                examined += 1
                token = doc.tokens[pos]
                for cand in candidates_at(pos):
                    sub = Substitution(
                        position=pos,
                        original=token.surface,
                        replacement=cand.word,
                        relation=cand.relation,
                        provider=provider_id,
                    )
                    if not pos_compatible(token, cand.word, backends.tokenizer.tagger):
                        result.rejected.append(RejectedTrial(sub, "pos"))
                        continue
                    trial = apply_substitutions(working, [sub], backends.tokenizer)
                    if introduces_double_negative(
                        doc, trial, cfg.negation, backends.negativity, original_flags
                    ):
                        result.rejected.append(RejectedTrial(sub, "double_negative"))
                        continue
                    verdict = classify([trial.raw], backends.classifier, stats, cfg.batch_size)[0]
                    cond1 = verdict.predicted == pred and abs(verdict.probs[pred] - c) <= cfg.delta
                    sim = backends.similarity.similarity(doc.raw, trial.raw)
                    cond2 = sim >= cfg.epsilon
                    if cond1 and cond2:
                        result.accepted.append(sub)
                        working = trial
                        result.altered = trial  # keeps aborted partial traces consistent
                        result.final_verdict = verdict
                        result.similarity_final = sim
                        if cfg.mode == "single":
                            stop = True
                        break
                    reasons = [name for name, ok in (("cond1", cond1), ("cond2", cond2)) if not ok]
                    result.rejected.append(RejectedTrial(sub, "+".join(reasons)))
    except BACKEND_FAILURES as exc:
        result.aborted = True
        result.abort_reason = f"{type(exc).__name__}: {exc}"

    result.queries = stats.classifier_queries
    result.success = bool(result.accepted)
    result.displacement = len(result.accepted)
    result.runtime_s = time.perf_counter() - t0
    return result


def generate_targeted(doc: Document, cfg: RunConfig, backends: Backends) -> AlterfactualResult:
    """Generate with eligibility restricted to target words.

    Alongside the usual >=1-accepted success flag, strict_success records
    whether EVERY target occurrence was substituted (a model whose prediction
    survives every identity swap). Documents without any target word come
    back not-applicable, with no oracle queries spent.
    """
    if not cfg.target_words:
        raise ValueError("generate_targeted needs a non-empty target_words set")
    if not eligible_positions(doc, cfg.target_words):
        return AlterfactualResult(
            original=doc, altered=doc, original_verdict=None, final_verdict=None,
            applicable=False, strict_success=None,
        )
    result = generate(doc, cfg, backends)
    wanted = set(eligible_positions(doc, cfg.target_words))
    got = {s.position for s in result.accepted}
    result.strict_success = wanted == got
    return result


def single_mode(cfg: RunConfig) -> RunConfig:
    return replace(cfg, mode="single")


def multi_mode(cfg: RunConfig) -> RunConfig:
    return replace(cfg, mode="multi")
