"""Deterministic toy world shared by the engine, evaluation and service tests.

A small vocabulary with word vectors, a bag-of-words toy classifier, an
opposite lexicon, a negation lexicon and a POS lexicon, engineered so the
greedy search exercises every accept/reject path: harmless swaps pass, a
decisive word trips the confidence gate, a far-vector word trips the
similarity gate, one pair trips the POS gate and one candidate is a negation
trigger that can create double negatives.
"""

from __future__ import annotations

import random

import numpy as np

from alterfactual.generator import Backends, RunConfig
from alterfactual.negation import NegationConfig
from alterfactual.opposites import OppositeLexicon
from alterfactual.oracles import LexiconNegativity, MeanVectorSimilarity, ToyLinearClassifier
from alterfactual.textcore import PosTagger, Tokenizer

STOPWORDS = frozenset({"the", "a", "an", "and", "of", "to", "it", "is"})

NEGATION_LEXICON = frozenset({"not", "never", "no", "isn't", "don't", "nothing"})

POS_TABLE = {
    "cat": "NOUN", "dog": "NOUN", "movie": "NOUN", "monday": "NOUN", "sunday": "NOUN",
    "home": "NOUN", "xen": "NOUN", "doctor": "NOUN",
    "run": "VERB", "walk": "VERB", "like": "VERB", "is": "VERB",
    "good": "ADJ", "bad": "ADJ", "fine": "ADJ", "poor": "ADJ", "pretty": "ADJ",
    "ugly": "ADJ", "big": "ADJ", "small": "ADJ",
    "really": "ADV", "very": "ADV", "maybe": "ADV", "never": "ADV", "not": "ADV",
    "up": "ADV", "down": "VERB",  # deliberate mismatch: up -> down always fails the POS gate
    "she": "PRON", "he": "PRON",
}

OPPOSITES = {
    "pretty": ["ugly"],
    "ugly": ["pretty"],
    "big": ["small"],
    "monday": ["sunday"],
    "cat": ["dog"],
    "movie": ["home", "dog"],  # two candidates: tried in file order
    "she": ["he"],
    "he": ["she"],
    "good": ["bad"],        # decisive weight: usually trips the confidence gate
    "fine": ["poor"],
    "up": ["down"],         # POS-incompatible on purpose
    "maybe": ["never"],     # negation trigger: can create a double negative
    "home": ["xen"],        # far vector: trips the similarity gate in short texts
    "really": ["very"],
    "walk": ["run"],
}

WORD_SCORES = {
    "good": 0.9,
    "bad": -0.9,
    "like": 0.35,
    "poor": -0.3,
    "fine": 0.25,
    "cat": 0.05,
    "dog": 0.05,
}

VOCAB = sorted(
    set(POS_TABLE)
    | set(OPPOSITES)
    | {o for opps in OPPOSITES.values() for o in opps}
    | set(WORD_SCORES)
    | set(NEGATION_LEXICON)
    | set(STOPWORDS)
)


# Words of one semantic field share a field direction, so in-field swaps move
# the sentence mean barely at all while deletions drop the field component.
SEMANTIC_FIELDS = [
    {"pretty", "ugly"}, {"big", "small"}, {"monday", "sunday"}, {"cat", "dog"},
    {"movie", "home"}, {"she", "he"}, {"good", "bad"}, {"fine", "poor"},
    {"up", "down"}, {"maybe", "never"}, {"really", "very"}, {"walk", "run"},
]


def toy_vectors() -> dict[str, np.ndarray]:
    """Field-clustered vectors around a shared base; 'xen' is the far outlier."""
    rng = np.random.default_rng(2024)
    dim = 8

    def unit():
        v = rng.normal(size=dim)
        return v / np.linalg.norm(v)

    base = np.zeros(dim)
    base[0] = 1.0
    field_dir = {}
    for fld in SEMANTIC_FIELDS:
        direction = unit()
        for word in fld:
            field_dir[word] = direction
    vectors = {}
    for word in VOCAB:
        direction = field_dir.get(word)
        if direction is None:
            direction = unit()
        vectors[word] = base + 0.4 * direction + 0.05 * unit()
    far = np.zeros(dim)
    far[dim - 1] = 1.0
    vectors["xen"] = far
    return vectors


def toy_classifier() -> ToyLinearClassifier:
    return ToyLinearClassifier.binary(WORD_SCORES)


def make_tokenizer() -> Tokenizer:
    return Tokenizer(stopwords=STOPWORDS, tagger=PosTagger(POS_TABLE))


def make_backends(classifier=None, provider=None, llm=None) -> Backends:
    return Backends(
        tokenizer=make_tokenizer(),
        classifier=classifier or toy_classifier(),
        similarity=MeanVectorSimilarity(toy_vectors()),
        negativity=LexiconNegativity(NEGATION_LEXICON),
        provider=provider if provider is not None else OppositeLexicon(OPPOSITES),
        llm=llm,
    )


def make_config(**overrides) -> RunConfig:
    defaults = dict(negation=NegationConfig(n_t=0.15, window=3), provider="lexicon")
    defaults.update(overrides)
    return RunConfig(**defaults)


# Words sampled into random documents; heavier on perturbable, zero-weight words.
SAMPLER_WORDS = [
    "pretty", "ugly", "big", "small", "monday", "sunday", "cat", "dog", "movie",
    "home", "she", "he", "good", "bad", "fine", "really", "very", "walk", "run",
    "up", "maybe", "not", "never", "the", "a", "is", "it", "like", "doctor",
]


def random_text(rng: random.Random, min_words: int = 3, max_words: int = 10) -> str:
    """A one- or two-sentence document over the toy vocabulary."""
    n = rng.randint(min_words, max_words)
    words = [rng.choice(SAMPLER_WORDS) for _ in range(n)]
    if rng.random() < 0.3 and n >= 4:
        cut = rng.randint(2, n - 2)
        return " ".join(words[:cut]) + ". " + " ".join(words[cut:]) + "."
    if rng.random() < 0.5:
        return " ".join(words) + "."
    return " ".join(words)


def write_resources(dirpath) -> dict[str, str]:
    """Materialize the toy world as the service's on-disk resource files."""
    paths = {}

    def write(name, content):
        path = dirpath / name
        path.write_text(content, encoding="utf-8")
        paths[name] = str(path)
        return path

    write("stopwords.txt", "\n".join(sorted(STOPWORDS)) + "\n")
    write("negation.txt", "\n".join(sorted(NEGATION_LEXICON)) + "\n")
    write("pos.txt", "".join(f"{w} {t}\n" for w, t in sorted(POS_TABLE.items())))
    write("opposites.txt", "".join(f"{w} {' '.join(o)}\n" for w, o in sorted(OPPOSITES.items())))
    vec_lines = []
    for word, vec in sorted(toy_vectors().items()):
        vec_lines.append(word + " " + " ".join(repr(float(x)) for x in vec))
    write("vectors.txt", "\n".join(vec_lines) + "\n")
    write("unigrams.txt", "".join(f"{w}\t{5}\n" for w in VOCAB))
    return paths


def toy_settings(dirpath, classifier_url: str) -> dict:
    """Service settings wiring the toy resource files to a classifier endpoint."""
    paths = write_resources(dirpath)
    return {
        "classifier.url": classifier_url,
        "provider": "lexicon",
        "stopwords.path": paths["stopwords.txt"],
        "pos_lexicon.path": paths["pos.txt"],
        "vectors.path": paths["vectors.txt"],
        "unigrams.path": paths["unigrams.txt"],
        "negation_lexicon.path": paths["negation.txt"],
        "opposites_lexicon.path": paths["opposites.txt"],
    }


def classifier_handler(model=None):
    """MockJsonServer handler serving the toy model over the classify contract."""
    model = model or toy_classifier()

    def handle(body):
        return (200, {"probs": model.predict_probs(body["texts"])})

    return handle


def reference_kwargs(cfg: RunConfig, classifier=None) -> dict:
    """Keyword arguments wiring the independent simulator to the same toy world."""
    lex = OppositeLexicon(OPPOSITES)
    return dict(
        classifier=classifier or toy_classifier(),
        similarity=MeanVectorSimilarity(toy_vectors()),
        candidates=lambda w: [c.word for c in lex.opposites_for(w)],
        tagger_table=POS_TABLE,
        stopwords=STOPWORDS,
        negation_lexicon=NEGATION_LEXICON,
        delta=cfg.delta,
        epsilon=cfg.epsilon,
        max_words=cfg.max_words,
        mode=cfg.mode,
        window=cfg.negation.window,
        targets=cfg.target_words,
    )
