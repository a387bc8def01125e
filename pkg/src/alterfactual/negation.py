"""Double-negative detection and the veto on perturbations that introduce one.

A sentence holds a double negative when two negation triggers sit within a
token-distance window of each other. Detection queries the negativity oracle
iteratively: while the returned score stays at or below the threshold, the
hit is recorded at its original token position, the word is removed from the
working sentence and the oracle is asked again. A perturbation is vetoed only
when it creates a double negative in a sentence that did not already have one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ContractViolationError, StructuralError
from .oracles import NegativityHit, NegativityOracle
from .textcore import Document, detokenize, tokenize


@dataclass(frozen=True)
class NegationConfig:
    n_t: float = 0.15  # scores <= n_t count as detected triggers
    window: int = 3    # max token distance between a double-negative pair

    def __post_init__(self):
        if not 0 < self.n_t <= 1:
            raise ValueError(f"n_t must be in (0, 1], got {self.n_t}")
        if self.window < 1:
            raise ValueError(f"window must be >= 1, got {self.window}")


@dataclass
class NegationReport:
    negatives: list[NegativityHit] = field(default_factory=list)
    is_double: bool = False


def _pairwise_within(positions: list[int], window: int) -> bool:
    for i in range(len(positions)):
        for j in range(i + 1, len(positions)):
            if abs(positions[i] - positions[j]) <= window:
                return True
    return False


def detect_double_negative(
    sentence: str, cfg: NegationConfig, oracle: NegativityOracle
) -> NegationReport:
    """Collect negation triggers by iterated query-and-remove; flag window pairs.

    Hit positions refer to the original sentence (removals do not shift them).
    An empty sentence reports no triggers and no double negative.
    """
    surfaces = [t.surface for t in tokenize(sentence).tokens]
    if not surfaces:
        return NegationReport()

    original_index = list(range(len(surfaces)))
    working = list(surfaces)
    hits: list[NegativityHit] = []
    while working:
        hit = oracle.most_negative(detokenize(working))
        if hit is None or hit.score > cfg.n_t:
            break
        if not 0 <= hit.position < len(working):
            raise ContractViolationError(
                f"negativity hit position {hit.position} outside the {len(working)}-token sentence"
            )
        hits.append(
            NegativityHit(word=hit.word, position=original_index[hit.position], score=hit.score)
        )
        del working[hit.position]
        del original_index[hit.position]

    positions = [h.position for h in hits]
    return NegationReport(negatives=hits, is_double=_pairwise_within(positions, cfg.window))


def sentence_double_flags(
    doc: Document, cfg: NegationConfig, oracle: NegativityOracle
) -> list[bool]:
    """Per-sentence is_double flags for a document."""
    flags = []
    for bound in doc.sentence_bounds:
        text = detokenize(doc.sentence_surfaces(bound))
        flags.append(detect_double_negative(text, cfg, oracle).is_double)
    return flags


def introduces_double_negative(
    original: Document,
    perturbed: Document,
    cfg: NegationConfig,
    oracle: NegativityOracle,
    original_flags: list[bool] | None = None,
) -> bool:
    """True iff some perturbed sentence is double-negative and its original was not.

    ``original_flags`` lets callers reuse precomputed original-sentence flags
    across many candidate perturbations of the same document.
    """
    if len(original.sentence_bounds) != len(perturbed.sentence_bounds):
        raise StructuralError(
            f"sentence partitioning differs: {len(original.sentence_bounds)} vs "
            f"{len(perturbed.sentence_bounds)} sentences"
        )
    if original_flags is None:
        original_flags = sentence_double_flags(original, cfg, oracle)
    elif len(original_flags) != len(original.sentence_bounds):
        raise StructuralError("original_flags length does not match sentence count")

    for idx, bound in enumerate(perturbed.sentence_bounds):
        if original_flags[idx]:
            continue  # the original already had a double negative here
        text = detokenize(perturbed.sentence_surfaces(bound))
        if detect_double_negative(text, cfg, oracle).is_double:
            return True
    return False
