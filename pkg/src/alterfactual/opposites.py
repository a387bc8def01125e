"""Opposite-word lookup: same-semantic-field replacements with persistent caching.

Three providers resolve a word's opposites: the ConceptNet knowledge graph
(relation hierarchy Antonym -> DistinctFrom -> hypernym's hyponyms), a chat
LLM prompted once per sentence, and a local lexicon file for offline
deterministic runs. ConceptNet misses are frequent, so negative results are
cached too.
"""

from __future__ import annotations

import json
import sqlite3
import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import requests

from .errors import LlmParseError, ProviderUnavailableError
from .textcore import Document

RELATION_KINDS = ("Antonym", "DistinctFrom", "HypernymHyponym", "LLM", "Lexicon")

# Upper bound on category members fetched per hypernym, to bound API load.
CATEGORY_MEMBER_CAP = 25
DEFAULT_PAGE_LIMIT = 50
NEGATIVE_CACHE_TTL_S = 30 * 24 * 3600  # empty results expire after 30 days

# Sent verbatim as the system message of every opposite-word chat request.
LLM_SYSTEM_PROMPT = (
    '"Job: output context-relevant antonyms for each word in a sentence. '
    "Output: JSON table with one row per word, each word is followed by ONE "
    "context-relevant antonym. Each antonym should be a single word. The "
    "original sentence should be grammatically correct when the antonym is "
    'swapped in. No titles, just "Word:Antonym". Words with no antonym '
    "should pair with '-'.\""
)


@dataclass(frozen=True)
class OppositeRelation:
    kind: str
    weight: float = 1.0

    def __post_init__(self):
        if self.kind not in RELATION_KINDS:
            raise ValueError(f"unknown relation kind {self.kind!r}")
        if self.weight < 0:
            raise ValueError(f"relation weight must be >= 0, got {self.weight}")


@dataclass(frozen=True)
class OppositeCandidate:
    word: str
    relation: OppositeRelation
    source_word: str

    def __post_init__(self):
        if self.word.lower() == self.source_word.lower():
            raise ValueError(f"candidate equals its source word: {self.word!r}")
        if len(self.word.split()) != 1:
            raise ValueError(f"candidate must be a single token: {self.word!r}")


def _normalize_label(label: str) -> str | None:
    """ConceptNet labels: underscores become spaces; multi-token terms are dropped."""
    word = label.replace("_", " ").strip().lower()
    if not word or len(word.split()) != 1:
        return None
    return word


def _order_candidates(cands: dict[str, float], kind: str, source: str) -> list[OppositeCandidate]:
    ordered = sorted(cands.items(), key=lambda kv: (-kv[1], kv[0]))
    return [
        OppositeCandidate(word=w, relation=OppositeRelation(kind, weight), source_word=source)
        for w, weight in ordered
    ]


def _default_fetch(url: str, params: Mapping[str, str], timeout: float,
                   retries: int, backoff: float) -> dict:
    last = None
    for attempt in range(retries):
        try:
            resp = requests.get(url, params=dict(params), timeout=timeout)
            resp.raise_for_status()
            return resp.json()
        except (requests.RequestException, ValueError) as exc:
            last = exc
            if attempt + 1 < retries:
                time.sleep(backoff * (2**attempt))
    raise ProviderUnavailableError(f"GET {url} failed after {retries} attempts: {last}")


class ConceptNetClient:
    """Thin client over the ConceptNet /query endpoint (self-hosted mirrors supported)."""

    def __init__(self, base_url: str = "https://api.conceptnet.io", timeout: float = 30.0,
                 retries: int = 3, backoff: float = 0.2,
                 fetch: Callable[[str, Mapping[str, str]], dict] | None = None,
                 page_limit: int = DEFAULT_PAGE_LIMIT):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff
        self.page_limit = page_limit
        self._fetch = fetch

    def query(self, params: Mapping[str, str]) -> list[dict]:
        url = self.base_url + "/query"
        merged = {"limit": str(self.page_limit), **params}
        if self._fetch is not None:
            body = self._fetch(url, merged)
        else:
            body = _default_fetch(url, merged, self.timeout, self.retries, self.backoff)
        return body.get("edges", [])

    @staticmethod
    def _node_word(node: dict) -> str | None:
        if node.get("language") not in (None, "en"):
            return None
        label = node.get("label") or ""
        return _normalize_label(label)

    def related_words(self, word: str, relation: str) -> dict[str, float]:
        """Words linked to `word` by `relation` (either direction), max weight per word."""
        edges = self.query({"node": f"/c/en/{word}", "rel": f"/r/{relation}"})
        out: dict[str, float] = {}
        for edge in edges:
            weight = float(edge.get("weight", 0.0))
            for side in ("start", "end"):
                other = self._node_word(edge.get(side) or {})
                if other is not None and other != word:
                    out[other] = max(out.get(other, 0.0), weight)
        return out

    def categories_of(self, word: str) -> list[tuple[str, float]]:
        """Hypernyms of `word` via IsA edges where the word is the start node.

        Categories may be multi-word ("music genre"); they are query keys,
        not replacement candidates, so no single-token restriction applies.
        """
        edges = self.query({"start": f"/c/en/{word}", "rel": "/r/IsA"})
        cats: dict[str, float] = {}
        for edge in edges:
            weight = float(edge.get("weight", 0.0))
            end = edge.get("end") or {}
            if end.get("language") not in (None, "en"):
                continue
            label = (end.get("label") or "").replace("_", " ").strip().lower()
            if label and label != word:
                cats[label] = max(cats.get(label, 0.0), weight)
        return sorted(cats.items(), key=lambda kv: (-kv[1], kv[0]))

    def category_members(self, category: str, limit: int) -> dict[str, float]:
        """Other IsA-members of a category (start nodes of edges ending at it)."""
        node = category.replace(" ", "_")
        edges = self.query({"end": f"/c/en/{node}", "rel": "/r/IsA", "limit": str(limit)})
        out: dict[str, float] = {}
        for edge in edges[:limit]:
            weight = float(edge.get("weight", 0.0))
            label = self._node_word(edge.get("start") or {})
            if label is not None:
                out[label] = max(out.get(label, 0.0), weight)
        return out


class ConceptNetProvider:
    """Strict tier order: Antonym, then DistinctFrom, then hypernym's hyponyms.

    The first tier that yields any candidate at or above the weight threshold
    wins; later tiers are never queried (request recorders can assert this).
    """

    def __init__(self, client: ConceptNetClient, omega_t: float = 0.5):
        self.client = client
        self.omega_t = omega_t
        self.provider_id = f"conceptnet:w={omega_t:g}"

    def _filtered(self, related: Mapping[str, float], word: str) -> dict[str, float]:
        return {
            w: wt for w, wt in related.items()
            if wt >= self.omega_t and w != word.lower()
        }

    def opposites_for(self, word: str) -> list[OppositeCandidate]:
        word = word.lower()
        for relation, kind in (("Antonym", "Antonym"), ("DistinctFrom", "DistinctFrom")):
            cands = self._filtered(self.client.related_words(word, relation), word)
            if cands:
                return _order_candidates(cands, kind, word)
        for category, cat_weight in self.client.categories_of(word):
            if cat_weight < self.omega_t:
                continue
            members = self._filtered(
                self.client.category_members(category, CATEGORY_MEMBER_CAP), word
            )
            if members:
                return _order_candidates(members, "HypernymHyponym", word)
        return []


class OppositeLexicon:
    """Offline provider: file rows 'word opposite1 opposite2 ...', order preserved."""

    provider_id = "lexicon"

    def __init__(self, table: Mapping[str, Sequence[str]] | None = None):
        self.table: dict[str, list[str]] = {}
        for word, opposites in (table or {}).items():
            key = word.lower()
            self.table[key] = [o.lower() for o in opposites if o.lower() != key]

    @classmethod
    def from_file(cls, path) -> "OppositeLexicon":
        table: dict[str, list[str]] = {}
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                parts = line.split()
                if not parts or parts[0].startswith("#"):
                    continue
                table[parts[0]] = parts[1:]
        return cls(table)

    def opposites_for(self, word: str) -> list[OppositeCandidate]:
        word = word.lower()
        return [
            OppositeCandidate(word=o, relation=OppositeRelation("Lexicon", 1.0), source_word=word)
            for o in self.table.get(word, [])
        ]

    def pairs(self) -> list[tuple[str, str]]:
        return [(w, opps[0]) for w, opps in self.table.items() if opps]


class LlmClient:
    """Chat-completions client; one request per sentence, temperature 0."""

    def __init__(self, base_url: str, model: str = "gpt-3.5-turbo", timeout: float = 60.0,
                 retries: int = 3, backoff: float = 0.2,
                 post: Callable[[str, dict], dict] | None = None):
        self.url = base_url.rstrip("/") + "/v1/chat/completions"
        self.model = model
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff
        self._post = post

    def complete(self, system: str, user: str) -> str:
        payload = {
            "model": self.model,
            "temperature": 0,
            "messages": [
                {"role": "system", "content": system},
                {"role": "user", "content": user},
            ],
        }
        if self._post is not None:
            body = self._post(self.url, payload)
        else:
            last = None
            for attempt in range(self.retries):
                try:
                    resp = requests.post(self.url, json=payload, timeout=self.timeout)
                    resp.raise_for_status()
                    body = resp.json()
                    break
                except (requests.RequestException, ValueError) as exc:
                    last = exc
                    if attempt + 1 < self.retries:
                        time.sleep(self.backoff * (2**attempt))
            else:
                raise ProviderUnavailableError(
                    f"POST {self.url} failed after {self.retries} attempts: {last}"
                )
        try:
            return body["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise ProviderUnavailableError(f"malformed chat response: {exc}")


@dataclass
class LlmOppositeMap:
    """Per-sentence plan: token position -> single candidate; incomplete marks missing rows."""

    by_position: dict[int, OppositeCandidate] = field(default_factory=dict)
    incomplete: bool = False


def _parse_word_antonym_rows(content: str) -> dict[str, str]:
    """Accept a JSON object, or a JSON list of 'Word:Antonym' strings/row objects."""
    data = json.loads(content)
    rows: dict[str, str] = {}
    if isinstance(data, dict):
        for k, v in data.items():
            rows[str(k).lower()] = str(v)
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, str) and ":" in item:
                k, _, v = item.partition(":")
                rows[k.strip().lower()] = v.strip()
            elif isinstance(item, dict) and len(item) == 1:
                ((k, v),) = item.items()
                rows[str(k).lower()] = str(v)
            else:
                raise ValueError(f"unparseable row: {item!r}")
    else:
        raise ValueError(f"expected object or list, got {type(data).__name__}")
    return rows


def _acceptable_antonym(source: str, antonym: str) -> bool:
    antonym = antonym.strip()
    if not antonym or antonym == "-":
        return False
    if antonym.lower() == "antonym":  # hallucination guard
        return False
    if antonym.lower() == source.lower():
        return False
    if len(antonym.split()) != 1:
        return False
    return True


def llm_opposites(sentence: Document, client: LlmClient) -> LlmOppositeMap:
    """Ask the LLM for one context-relevant antonym per word of the sentence.

    Non-JSON content gets exactly one reprompt; a second failure raises
    LlmParseError. Rows paired with '-' are omitted; hallucinated, echoed or
    multi-word antonyms are rejected; words without any row mark the map
    incomplete.
    """
    content = client.complete(LLM_SYSTEM_PROMPT, sentence.raw)
    try:
        rows = _parse_word_antonym_rows(content)
    except ValueError:
        content = client.complete(LLM_SYSTEM_PROMPT, sentence.raw)
        try:
            rows = _parse_word_antonym_rows(content)
        except ValueError as exc:
            raise LlmParseError(f"unparseable LLM response after reprompt: {exc}")

    result = LlmOppositeMap()
    for pos, token in enumerate(sentence.tokens):
        if token.is_punct:
            continue
        antonym = rows.get(token.normalized)
        if antonym is None:
            result.incomplete = True
            continue
        if not _acceptable_antonym(token.normalized, antonym):
            continue
        result.by_position[pos] = OppositeCandidate(
            word=antonym.strip().lower(),
            relation=OppositeRelation("LLM", 1.0),
            source_word=token.normalized,
        )
    return result


class CacheStore:
    """Single-file key-value store for opposite lookups (sqlite under the hood).

    Values are JSON-encoded candidate lists; empty lists are stored too and
    expire after NEGATIVE_CACHE_TTL_S. Corrupt rows read as misses and are
    overwritten on the next put.
    """

    def __init__(self, path):
        self.path = str(path)
        self._lock = threading.Lock()
        self._conn = sqlite3.connect(self.path, check_same_thread=False)
        with self._lock:
            self._conn.execute(
                "CREATE TABLE IF NOT EXISTS opposites ("
                " provider TEXT NOT NULL, word TEXT NOT NULL,"
                " payload TEXT NOT NULL, fetched_at REAL NOT NULL,"
                " PRIMARY KEY (provider, word))"
            )
            self._conn.commit()

    def get(self, provider_id: str, word: str) -> list[OppositeCandidate] | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT payload, fetched_at FROM opposites WHERE provider=? AND word=?",
                (provider_id, word.lower()),
            ).fetchone()
        if row is None:
            return None
        payload, fetched_at = row
        try:
            items = json.loads(payload)
            cands = [
                OppositeCandidate(
                    word=i["word"],
                    relation=OppositeRelation(i["kind"], float(i["weight"])),
                    source_word=i["source"],
                )
                for i in items
            ]
        except (ValueError, KeyError, TypeError):
            return None  # corrupt record: treat as miss, next put overwrites
        if not cands and time.time() - fetched_at > NEGATIVE_CACHE_TTL_S:
            return None
        return cands

    def put(self, provider_id: str, word: str, candidates: Sequence[OppositeCandidate]) -> None:
        payload = json.dumps(
            [
                {"word": c.word, "kind": c.relation.kind,
                 "weight": c.relation.weight, "source": c.source_word}
                for c in candidates
            ]
        )
        with self._lock:
            self._conn.execute(
                "INSERT OR REPLACE INTO opposites (provider, word, payload, fetched_at)"
                " VALUES (?, ?, ?, ?)",
                (provider_id, word.lower(), payload, time.time()),
            )
            self._conn.commit()

    def close(self):
        with self._lock:
            self._conn.close()


class CachedProvider:
    """Wraps a word->candidates provider with the persistent cache."""

    def __init__(self, provider, store: CacheStore):
        self.provider = provider
        self.store = store
        self.provider_id = provider.provider_id

    def opposites_for(self, word: str) -> list[OppositeCandidate]:
        cached = self.store.get(self.provider_id, word)
        if cached is not None:
            return cached
        fresh = self.provider.opposites_for(word)
        self.store.put(self.provider_id, word, fresh)
        return fresh
