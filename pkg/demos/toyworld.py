"""A self-contained toy world for the demo scripts.

A tiny movie-review sentiment classifier (bag-of-words + softmax), word
vectors clustered by semantic field, an opposite lexicon, a negation lexicon
and a POS lexicon. Everything is deterministic and runs offline.
"""

import numpy as np

from alterfactual import (
    Backends,
    LexiconNegativity,
    MeanVectorSimilarity,
    OppositeLexicon,
    PosTagger,
    RunConfig,
    Tokenizer,
    ToyLinearClassifier,
    UnigramPerplexity,
)

STOPWORDS = {"the", "a", "an", "and", "of", "to", "it", "is", "was"}

NEGATION_WORDS = {"not", "never", "no", "isn't", "don't", "nothing"}

POS_TABLE = {
    "movie": "NOUN", "film": "NOUN", "plot": "NOUN", "acting": "NOUN",
    "monday": "NOUN", "sunday": "NOUN", "evening": "NOUN", "morning": "NOUN",
    "she": "PRON", "he": "PRON",
    "watched": "VERB", "enjoyed": "VERB", "liked": "VERB",
    "good": "ADJ", "bad": "ADJ", "great": "ADJ", "awful": "ADJ",
    "long": "ADJ", "short": "ADJ", "slow": "ADJ", "fast": "ADJ",
    "pretty": "ADJ", "ugly": "ADJ",
    "really": "ADV", "very": "ADV", "maybe": "ADV", "never": "ADV",
}

OPPOSITES = {
    "movie": ["film"],
    "monday": ["sunday"],
    "evening": ["morning"],
    "long": ["short"],
    "slow": ["fast"],
    "pretty": ["ugly"],
    "she": ["he"],
    "he": ["she"],
    "good": ["bad"],       # decisive for the classifier: expect a rejection
    "great": ["awful"],    # decisive as well
    "really": ["very"],
    "maybe": ["never"],    # negation trigger: can be vetoed
}

SEMANTIC_FIELDS = [
    {"movie", "film"}, {"monday", "sunday"}, {"evening", "morning"},
    {"long", "short"}, {"slow", "fast"}, {"pretty", "ugly"}, {"she", "he"},
    {"good", "bad"}, {"great", "awful"}, {"really", "very"}, {"maybe", "never"},
]

SENTIMENT_WEIGHTS = {"good": 1.2, "great": 1.5, "enjoyed": 0.8, "liked": 0.6,
                     "bad": -1.2, "awful": -1.5, "slow": -0.2}

VOCAB = sorted(set(POS_TABLE) | STOPWORDS | NEGATION_WORDS
               | {o for v in OPPOSITES.values() for o in v} | set(SENTIMENT_WEIGHTS))


def vectors() -> dict[str, np.ndarray]:
    rng = np.random.default_rng(7)
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
    return {
        w: base + 0.4 * field_dir.get(w, unit()) + 0.05 * unit()
        for w in VOCAB
    }


def sentiment_classifier() -> ToyLinearClassifier:
    """Class 0 = negative review, class 1 = positive review."""
    return ToyLinearClassifier.binary(SENTIMENT_WEIGHTS)


def backends(classifier=None) -> Backends:
    return Backends(
        tokenizer=Tokenizer(stopwords=STOPWORDS, tagger=PosTagger(POS_TABLE)),
        classifier=classifier or sentiment_classifier(),
        similarity=MeanVectorSimilarity(vectors()),
        negativity=LexiconNegativity(NEGATION_WORDS),
        provider=OppositeLexicon(OPPOSITES),
        perplexity=UnigramPerplexity({w: 5 for w in VOCAB}),
    )


def config(**overrides) -> RunConfig:
    return RunConfig(provider="lexicon", **overrides)


REVIEWS = [
    "She watched the movie on monday evening and enjoyed the plot",
    "The movie was really good and the acting was great",
    "He watched the long movie and liked the pretty plot",
    "The plot was slow and the movie was maybe not good",
    "She enjoyed the film on sunday morning",
    "The acting was awful and the plot was bad",
]
