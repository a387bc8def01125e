"""Tokenization, detokenization and substitution mechanics for audited documents.

The tokenizer splits on whitespace, separates punctuation into its own tokens
and keeps apostrophe contractions intact, so negation surface forms like
"isn't" survive as single tokens. Sentence bounds split on terminal
punctuation (. ! ?). No lemmatization, no morphological repair, English only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import SubstitutionError

POS_TAGS = ("NOUN", "VERB", "ADJ", "ADV", "PRON", "OTHER")

TERMINAL_PUNCT = {".", "!", "?"}

# A token is either a word (with optional apostrophe contractions: isn't,
# o'clock) or a single punctuation character.
_TOKEN_RE = re.compile(r"\w+(?:['’]\w+)*|[^\w\s]")

_PUNCT_RE = re.compile(r"[^\w\s]+\Z")

# Punctuation that attaches to the preceding token when detokenizing.
_ATTACH_LEFT = {",", ".", "!", "?", ";", ":", "%", ")", "]", "}", "'", '"', "’"}
# Punctuation that attaches to the following token.
_ATTACH_RIGHT = {"(", "[", "{", "$"}


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    is_stopword: bool
    pos: str
    is_punct: bool


@dataclass(frozen=True)
class Document:
    """Tokenized input text with sentence bounds (half-open token ranges)."""

    raw: str
    tokens: tuple[Token, ...]
    sentence_bounds: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.tokens)

    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]

    def sentence_surfaces(self, bound: tuple[int, int]) -> list[str]:
        start, end = bound
        return [t.surface for t in self.tokens[start:end]]


@dataclass(frozen=True)
class Substitution:
    """One word-for-word replacement; replacement == "" encodes a deletion."""

    position: int
    original: str
    replacement: str
    relation: object | None = None  # OppositeRelation; kept loose to avoid an import cycle
    provider: str = ""

    def __post_init__(self):
        if self.position < 0:
            raise ValueError(f"substitution position must be >= 0, got {self.position}")
        if self.original.lower() == self.replacement.lower():
            raise ValueError(
                f"substitution must change the word: {self.original!r} -> {self.replacement!r}"
            )


class PosTagger:
    """Word -> coarse part-of-speech tag, loaded from a two-column lexicon.

    Unknown words map to OTHER. The lexicon file has one entry per line:
    whitespace-separated word and tag. Any object with a ``tag(word)`` method
    returning one of POS_TAGS can stand in for this class.
    """

    def __init__(self, table: Mapping[str, str] | None = None):
        self._table: dict[str, str] = {}
        for word, tag in (table or {}).items():
            tag = tag.upper()
            if tag not in POS_TAGS:
                raise ValueError(f"unknown POS tag {tag!r} for word {word!r}")
            self._table[word.lower()] = tag

    @classmethod
    def from_file(cls, path) -> "PosTagger":
        table = {}
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                parts = line.split()
                if not parts or parts[0].startswith("#"):
                    continue
                if len(parts) != 2:
                    raise ValueError(f"POS lexicon line needs 'word tag', got: {line!r}")
                table[parts[0]] = parts[1]
        return cls(table)

    def tag(self, word: str) -> str:
        return self._table.get(word.lower(), "OTHER")


def load_stopwords(path) -> frozenset[str]:
    """Stopword file: one word per line, UTF-8."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip()
            if word and not word.startswith("#"):
                words.add(word.lower())
    return frozenset(words)


class Tokenizer:
    """Tokenizer that annotates tokens with stopword and POS information."""

    def __init__(self, stopwords: Iterable[str] = (), tagger: PosTagger | None = None):
        self.stopwords = frozenset(w.lower() for w in stopwords)
        self.tagger = tagger or PosTagger()

    def make_token(self, surface: str) -> Token:
        normalized = surface.lower()
        is_punct = bool(_PUNCT_RE.match(surface))
        return Token(
            surface=surface,
            normalized=normalized,
            is_stopword=(not is_punct) and normalized in self.stopwords,
            pos="OTHER" if is_punct else self.tagger.tag(normalized),
            is_punct=is_punct,
        )

    def tokenize(self, raw: str) -> Document:
        surfaces = _TOKEN_RE.findall(raw)
        tokens = tuple(self.make_token(s) for s in surfaces)
        return Document(raw=raw, tokens=tokens, sentence_bounds=sentence_bounds(surfaces))


def sentence_bounds(surfaces: Sequence[str]) -> tuple[tuple[int, int], ...]:
    """Half-open token ranges; a sentence closes after a run of . ! ? tokens."""
    bounds: list[tuple[int, int]] = []
    start = 0
    i = 0
    n = len(surfaces)
    while i < n:
        if surfaces[i] in TERMINAL_PUNCT:
            while i + 1 < n and surfaces[i + 1] in TERMINAL_PUNCT:
                i += 1
            bounds.append((start, i + 1))
            start = i + 1
        i += 1
    if start < n:
        bounds.append((start, n))
    return tuple(bounds)


def tokenize(raw: str, stopwords: Iterable[str] = (), tagger: PosTagger | None = None) -> Document:
    """Convenience wrapper over Tokenizer for one-off calls."""
    return Tokenizer(stopwords, tagger).tokenize(raw)


def detokenize(surfaces: Iterable[str]) -> str:
    """Join token surfaces back into text, reattaching punctuation."""
    out: list[str] = []
    prev = None
    for surface in surfaces:
        if not out:
            out.append(surface)
        elif surface in _ATTACH_LEFT or prev in _ATTACH_RIGHT:
            out.append(surface)
        else:
            out.append(" ")
            out.append(surface)
        prev = surface
    return "".join(out)


def _inherit_casing(original: str, replacement: str) -> str:
    if original[:1].isupper() and replacement:
        return replacement[0].upper() + replacement[1:]
    return replacement


def apply_substitutions(
    doc: Document, subs: Sequence[Substitution], tokenizer: Tokenizer | None = None
) -> Document:
    """Return a new Document with the substitutions applied.

    Untouched tokens are carried over unchanged; replacements inherit a
    leading capital when the original was capitalized and are re-annotated
    with the given tokenizer's stopword list and tagger. Any invalid
    substitution rejects the whole batch.
    """
    tokenizer = tokenizer or Tokenizer()
    positions = [s.position for s in subs]
    if len(set(positions)) != len(positions):
        raise SubstitutionError(f"duplicate substitution positions: {sorted(positions)}")
    for sub in subs:
        if not 0 <= sub.position < len(doc.tokens):
            raise SubstitutionError(
                f"position {sub.position} out of range for a {len(doc.tokens)}-token document"
            )
        token = doc.tokens[sub.position]
        if token.normalized != sub.original.lower():
            raise SubstitutionError(
                f"substitution original {sub.original!r} does not match token "
                f"{token.surface!r} at position {sub.position}"
            )
        if not sub.replacement or len(sub.replacement.split()) != 1:
            raise SubstitutionError(f"replacement must be a single word, got {sub.replacement!r}")

    new_tokens = list(doc.tokens)
    for sub in subs:
        surface = _inherit_casing(doc.tokens[sub.position].surface, sub.replacement)
        new_tokens[sub.position] = tokenizer.make_token(surface)
    surfaces = [t.surface for t in new_tokens]
    return Document(
        raw=detokenize(surfaces),
        tokens=tuple(new_tokens),
        sentence_bounds=doc.sentence_bounds,
    )


def delete_tokens(doc: Document, positions: Iterable[int], tokenizer: Tokenizer | None = None) -> Document:
    """Return a new Document with the given token positions removed."""
    drop = set(positions)
    for p in drop:
        if not 0 <= p < len(doc.tokens):
            raise SubstitutionError(f"position {p} out of range for a {len(doc.tokens)}-token document")
    kept = [t for i, t in enumerate(doc.tokens) if i not in drop]
    surfaces = [t.surface for t in kept]
    return Document(
        raw=detokenize(surfaces),
        tokens=tuple(kept),
        sentence_bounds=sentence_bounds(surfaces),
    )


def pos_compatible(original: Token, replacement: str, tagger: PosTagger) -> bool:
    """True iff tags match, or either side is OTHER (permissive on unknowns)."""
    replacement_tag = tagger.tag(replacement.lower())
    return original.pos == replacement_tag or "OTHER" in (original.pos, replacement_tag)
