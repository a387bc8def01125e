"""Pluggable interfaces and reference backends for the four external models.

The pipeline consults a classifier, a sentence-similarity scorer, a
perplexity scorer and a negativity detector. Each has a deterministic
in-process backend (for tests and desk-scale runs) and an HTTP backend that
proxies the real model behind a small JSON contract. No model checkpoints are
ever loaded in-process.
"""

from __future__ import annotations

import math
import threading
import time
from dataclasses import dataclass, field
from typing import Mapping, Protocol, Sequence

import numpy as np
import requests

from .errors import ContractViolationError, OracleTransportError, UndefinedSimilarityError
from .textcore import tokenize

PROB_SUM_TOL = 1e-6
DEFAULT_BATCH_SIZE = 32
DEFAULT_RETRIES = 3


@dataclass(frozen=True)
class Verdict:
    """Class-probability vector with the predicted label (lowest-index tie-break)."""

    probs: tuple[float, ...]

    def __post_init__(self):
        if not self.probs:
            raise ContractViolationError("verdict needs at least one class probability")
        if any(p < -PROB_SUM_TOL or p > 1 + PROB_SUM_TOL for p in self.probs):
            raise ContractViolationError(f"probabilities out of [0,1]: {self.probs}")
        if abs(sum(self.probs) - 1.0) > PROB_SUM_TOL:
            raise ContractViolationError(f"probabilities sum to {sum(self.probs)}, not 1")

    @property
    def predicted(self) -> int:
        best = 0
        for i, p in enumerate(self.probs):
            if p > self.probs[best]:
                best = i
        return best

    @property
    def confidence(self) -> float:
        return self.probs[self.predicted]


@dataclass(frozen=True)
class NegativityHit:
    """A detected negation trigger; score <= n_t means 'detected'."""

    word: str
    position: int
    score: float


@dataclass
class OracleStats:
    """Per-run accounting; classifier_queries counts texts sent, atomically."""

    classifier_queries: int = 0
    wall_time: float = 0.0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def add_queries(self, n: int) -> None:
        with self._lock:
            self.classifier_queries += n

    def add_wall_time(self, seconds: float) -> None:
        with self._lock:
            self.wall_time += seconds


class ClassifierOracle(Protocol):
    def predict_probs(self, texts: Sequence[str]) -> list[list[float]]: ...


class SimilarityOracle(Protocol):
    def similarity(self, a: str, b: str) -> float: ...


class PerplexityOracle(Protocol):
    def perplexity(self, text: str) -> float: ...


class NegativityOracle(Protocol):
    def most_negative(self, text: str) -> NegativityHit | None: ...


def classify(
    texts: Sequence[str],
    oracle: ClassifierOracle,
    stats: OracleStats | None = None,
    batch_size: int = DEFAULT_BATCH_SIZE,
) -> list[Verdict]:
    """Classify texts in batches, one Verdict per input, order-preserving."""
    if not texts:
        raise ValueError("classify needs a non-empty list of texts")
    verdicts: list[Verdict] = []
    for start in range(0, len(texts), batch_size):
        batch = list(texts[start : start + batch_size])
        t0 = time.perf_counter()
        rows = oracle.predict_probs(batch)
        if stats is not None:
            stats.add_queries(len(batch))
            stats.add_wall_time(time.perf_counter() - t0)
        if len(rows) != len(batch):
            raise ContractViolationError(
                f"classifier returned {len(rows)} rows for {len(batch)} texts"
            )
        verdicts.extend(Verdict(tuple(float(p) for p in row)) for row in rows)
    return verdicts


def _word_tokens(text: str) -> list[str]:
    return [t.normalized for t in tokenize(text).tokens if not t.is_punct]


class ToyLinearClassifier:
    """Deterministic bag-of-words linear model over word weight vectors.

    ``weights`` maps a word to one additive score per class; logits are the
    per-class sums plus bias, squashed with a softmax. ``binary`` builds the
    two-class convention where a scalar score s contributes logits (-s, +s).
    """

    def __init__(self, weights: Mapping[str, Sequence[float]], num_classes: int = 2,
                 bias: Sequence[float] | None = None):
        self.num_classes = num_classes
        self.weights = {w.lower(): np.asarray(v, dtype=float) for w, v in weights.items()}
        for w, v in self.weights.items():
            if v.shape != (num_classes,):
                raise ValueError(f"weight vector for {w!r} has shape {v.shape}, expected ({num_classes},)")
        self.bias = np.zeros(num_classes) if bias is None else np.asarray(bias, dtype=float)

    @classmethod
    def binary(cls, word_scores: Mapping[str, float], bias: float = 0.0) -> "ToyLinearClassifier":
        weights = {w: (-s, s) for w, s in word_scores.items()}
        return cls(weights, num_classes=2, bias=(-bias, bias))

    def predict_probs(self, texts: Sequence[str]) -> list[list[float]]:
        out = []
        for text in texts:
            logits = self.bias.copy()
            for word in _word_tokens(text):
                vec = self.weights.get(word)
                if vec is not None:
                    logits = logits + vec
            shifted = logits - logits.max()
            exp = np.exp(shifted)
            out.append((exp / exp.sum()).tolist())
        return out


def _post_json(url: str, payload: dict, timeout: float, retries: int, backoff: float) -> dict:
    """POST with bounded exponential-backoff retries; raises OracleTransportError."""
    last = None
    for attempt in range(retries):
        try:
            resp = requests.post(url, json=payload, timeout=timeout)
            resp.raise_for_status()
            return resp.json()
        except (requests.RequestException, ValueError) as exc:
            last = exc
            if attempt + 1 < retries:
                time.sleep(backoff * (2**attempt))
    raise OracleTransportError(f"POST {url} failed after {retries} attempts: {last}")


class HttpClassifier:
    """Classifier endpoint contract: POST {base}/classify {"texts": [...]} -> {"probs": [[...], ...]}."""

    def __init__(self, base_url: str, timeout: float = 30.0,
                 retries: int = DEFAULT_RETRIES, backoff: float = 0.2):
        self.url = base_url.rstrip("/") + "/classify"
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff

    def predict_probs(self, texts: Sequence[str]) -> list[list[float]]:
        last = None
        for attempt in range(self.retries):
            try:
                resp = requests.post(self.url, json={"texts": list(texts)}, timeout=self.timeout)
                resp.raise_for_status()
                body = resp.json()
                probs = body["probs"]
                if not isinstance(probs, list) or len(probs) != len(texts):
                    raise KeyError(f"'probs' must hold {len(texts)} rows")
                return [[float(p) for p in row] for row in probs]
            except (requests.RequestException, KeyError, TypeError, ValueError) as exc:
                last = exc
                if attempt + 1 < self.retries:
                    time.sleep(self.backoff * (2**attempt))
        raise OracleTransportError(f"POST {self.url} failed after {self.retries} attempts: {last}")


def load_word_vectors(path) -> dict[str, np.ndarray]:
    """Vector file: one line per word, the word followed by space-separated floats."""
    vectors: dict[str, np.ndarray] = {}
    dim = None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            vec = np.asarray([float(x) for x in parts[1:]], dtype=float)
            if dim is None:
                dim = vec.size
            elif vec.size != dim:
                raise ValueError(f"vector for {parts[0]!r} has {vec.size} dims, expected {dim}")
            vectors[parts[0].lower()] = vec
    if not vectors:
        raise ValueError(f"no vectors found in {path}")
    return vectors


class MeanVectorSimilarity:
    """Cosine of mean word vectors; out-of-vocabulary words contribute zero vectors."""

    def __init__(self, vectors: Mapping[str, np.ndarray]):
        if not vectors:
            raise ValueError("empty vector table")
        self.vectors = {w.lower(): np.asarray(v, dtype=float) for w, v in vectors.items()}
        self.dim = next(iter(self.vectors.values())).size

    @classmethod
    def from_file(cls, path) -> "MeanVectorSimilarity":
        return cls(load_word_vectors(path))

    def _mean(self, text: str) -> np.ndarray:
        total = np.zeros(self.dim)
        words = _word_tokens(text)
        hits = 0
        for word in words:
            vec = self.vectors.get(word)
            if vec is not None:
                total += vec
                hits += 1
        if not words or hits == 0:
            return total  # zero vector; caller decides whether that is an error
        return total / len(words)

    def similarity(self, a: str, b: str) -> float:
        va, vb = self._mean(a), self._mean(b)
        na, nb = np.linalg.norm(va), np.linalg.norm(vb)
        if na == 0.0 and nb == 0.0:
            raise UndefinedSimilarityError(
                f"both texts are entirely out of vocabulary: {a!r}, {b!r}"
            )
        if na == 0.0 or nb == 0.0:
            return 0.0
        return float(np.clip(np.dot(va, vb) / (na * nb), -1.0, 1.0))


class HttpEmbeddingSimilarity:
    """Embedding endpoint contract: POST {base}/embed {"texts": [...]} -> {"vectors": [[...], ...]}."""

    def __init__(self, base_url: str, timeout: float = 30.0,
                 retries: int = DEFAULT_RETRIES, backoff: float = 0.2):
        self.url = base_url.rstrip("/") + "/embed"
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff

    def similarity(self, a: str, b: str) -> float:
        body = _post_json(self.url, {"texts": [a, b]}, self.timeout, self.retries, self.backoff)
        try:
            va, vb = (np.asarray(v, dtype=float) for v in body["vectors"])
        except (KeyError, TypeError, ValueError) as exc:
            raise OracleTransportError(f"malformed embed response: {exc}")
        na, nb = np.linalg.norm(va), np.linalg.norm(vb)
        if na == 0.0 and nb == 0.0:
            raise UndefinedSimilarityError("embedding backend returned two zero vectors")
        if na == 0.0 or nb == 0.0:
            return 0.0
        return float(np.clip(np.dot(va, vb) / (na * nb), -1.0, 1.0))


def load_unigram_table(path) -> dict[str, int]:
    """Unigram table file: word<TAB>count per line."""
    table: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            word, count = line.rstrip("\n").split("\t")
            table[word.lower()] = int(count)
    if not table:
        raise ValueError(f"no unigram entries in {path}")
    return table


class UnigramPerplexity:
    """exp(-(1/n) sum log p(token)) with add-one smoothing over a frequency table.

    p(w) = (count(w) + 1) / (total + V), so a uniform table over V words gives
    perplexity exactly V for any text drawn from it.
    """

    def __init__(self, table: Mapping[str, int]):
        if not table:
            raise ValueError("empty unigram table")
        self.table = {w.lower(): int(c) for w, c in table.items()}
        self.total = sum(self.table.values())
        self.vocab_size = len(self.table)

    @classmethod
    def from_file(cls, path) -> "UnigramPerplexity":
        return cls(load_unigram_table(path))

    def word_prob(self, word: str) -> float:
        return (self.table.get(word.lower(), 0) + 1) / (self.total + self.vocab_size)

    def perplexity(self, text: str) -> float:
        words = _word_tokens(text)
        if not words:
            raise ValueError(f"perplexity needs at least one word token, got {text!r}")
        log_sum = sum(math.log(self.word_prob(w)) for w in words)
        return math.exp(-log_sum / len(words))


class HttpPerplexity:
    """Scoring endpoint contract: POST {base}/perplexity {"texts": [...]} -> {"perplexities": [...]}."""

    def __init__(self, base_url: str, timeout: float = 30.0,
                 retries: int = DEFAULT_RETRIES, backoff: float = 0.2):
        self.url = base_url.rstrip("/") + "/perplexity"
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff

    def perplexity(self, text: str) -> float:
        if not text.strip():
            raise ValueError("perplexity needs non-empty text")
        body = _post_json(self.url, {"texts": [text]}, self.timeout, self.retries, self.backoff)
        try:
            value = float(body["perplexities"][0])
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise OracleTransportError(f"malformed perplexity response: {exc}")
        if value <= 0:
            raise ContractViolationError(f"perplexity must be positive, got {value}")
        return value


def load_negation_lexicon(path) -> frozenset[str]:
    """Negation lexicon file: one trigger word per line."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip()
            if word and not word.startswith("#"):
                words.add(word.lower())
    return frozenset(words)


class LexiconNegativity:
    """First token found in the negation lexicon, scored 0.0; no hit -> None."""

    def __init__(self, lexicon: Sequence[str] | frozenset[str]):
        self.lexicon = frozenset(w.lower() for w in lexicon)

    @classmethod
    def from_file(cls, path) -> "LexiconNegativity":
        return cls(load_negation_lexicon(path))

    def most_negative(self, text: str) -> NegativityHit | None:
        for i, tok in enumerate(tokenize(text).tokens):
            if not tok.is_punct and tok.normalized in self.lexicon:
                return NegativityHit(word=tok.surface, position=i, score=0.0)
        return None


class HttpNegativity:
    """Detector endpoint contract: POST {base}/negativity {"text": ...} ->
    {"word": str|null, "position": int, "score": float}; a null word means no hit."""

    def __init__(self, base_url: str, timeout: float = 30.0,
                 retries: int = DEFAULT_RETRIES, backoff: float = 0.2):
        self.url = base_url.rstrip("/") + "/negativity"
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff

    def most_negative(self, text: str) -> NegativityHit | None:
        body = _post_json(self.url, {"text": text}, self.timeout, self.retries, self.backoff)
        if body.get("word") in (None, ""):
            return None
        try:
            return NegativityHit(
                word=str(body["word"]), position=int(body["position"]), score=float(body["score"])
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise OracleTransportError(f"malformed negativity response: {exc}")
