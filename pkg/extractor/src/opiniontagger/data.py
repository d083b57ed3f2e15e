"""Training/evaluation data: annotated sentences from XML, JSON, or a corpus.

Supported inputs:

* restaurant-review ABSA XML: ``<Reviews><Review><sentences><sentence>``
  elements with ``<text>`` and ``<Opinions><Opinion target= category=
  polarity= from= to=/>`` children; ``target="NULL"`` marks implicit aspects
  and ENTITY#ATTRIBUTE categories collapse to their entity;
* an equivalent JSON document {"sentences": [{"text", "opinions": [...]}]};
* the engine's review-corpus JSON (gold_opinions aligned to sentences).
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

from .tagging import (
    ASPECT_IN,
    ASPECT_OUT,
    NONE_TAG,
    ExtractedOpinion,
    TokenTagging,
)
from .text import char_span_to_token_span, review_sentences, tokenize

#: Entity-level collapse of ENTITY#ATTRIBUTE category labels.
ENTITY_COLLAPSE = {
    "RESTAURANT": "restaurant",
    "FOOD": "food",
    "DRINKS": "drinks",
    "SERVICE": "service",
    "AMBIENCE": "ambience",
    "LOCATION": "location",
}

#: "conflict" appears in some annotation schemes; the engine's scale only
#: distinguishes positive/negative in the numerator, so it maps to neutral.
POLARITY_ALIASES = {"conflict": "neutral"}


class DataError(ValueError):
    """Raised when annotations and tokens cannot be aligned."""


@dataclass(frozen=True)
class GoldOpinion:
    aspect_term: Optional[str]
    category: str
    polarity: str
    token_span: Optional[tuple[int, int]]


@dataclass
class TaggedSentence:
    """One tokenized sentence with gold opinions and derived token tags."""

    text: str
    tokens: list[str]
    opinions: list[GoldOpinion]
    source: str = ""
    tagging: TokenTagging = field(init=False)

    def __post_init__(self) -> None:
        aspect = [ASPECT_OUT] * len(self.tokens)
        category = [NONE_TAG] * len(self.tokens)
        polarity = [NONE_TAG] * len(self.tokens)
        for opinion in self.opinions:
            if opinion.token_span is not None:
                start, end = opinion.token_span
                if not (0 <= start < end <= len(self.tokens)):
                    raise DataError(
                        f"{self.source or self.text!r}: opinion span {opinion.token_span} "
                        f"outside {len(self.tokens)} tokens"
                    )
                for index in range(start, end):
                    aspect[index] = ASPECT_IN
                    category[index] = opinion.category
                    polarity[index] = opinion.polarity
            else:
                # implicit: no aspect token anywhere; park the labels on the
                # first free token so the decoder recovers one opinion per
                # distinct category
                try:
                    index = category.index(NONE_TAG)
                except ValueError:
                    raise DataError(
                        f"{self.source or self.text!r}: no free token for implicit opinion"
                    ) from None
                category[index] = opinion.category
                polarity[index] = opinion.polarity
        self.tagging = TokenTagging(
            tuple(self.tokens), tuple(aspect), tuple(category), tuple(polarity)
        )

    def categories(self) -> list[str]:
        return [opinion.category for opinion in self.opinions]


def collapse_category(label: str) -> str:
    entity = label.split("#")[0].strip()
    if entity.upper() in ENTITY_COLLAPSE:
        return ENTITY_COLLAPSE[entity.upper()]
    return entity.lower()


def normalize_polarity(raw: str) -> str:
    polarity = raw.strip().lower()
    polarity = POLARITY_ALIASES.get(polarity, polarity)
    if polarity not in ("positive", "negative", "neutral"):
        raise DataError(f"unknown polarity {raw!r}")
    return polarity


def _sentence_from_annotations(
    text: str, raw_opinions: Sequence[dict], source: str
) -> TaggedSentence:
    tokens = tokenize(text)
    opinions = []
    for raw in raw_opinions:
        target = raw.get("target")
        implicit = target is None or target == "NULL"
        category = collapse_category(str(raw["category"]))
        polarity = normalize_polarity(str(raw["polarity"]))
        span = None
        if not implicit:
            start, end = raw.get("from"), raw.get("to")
            if start is None or end is None or int(end) <= int(start):
                # fall back to locating the target string
                at = text.find(str(target))
                if at < 0:
                    raise DataError(f"{source}: target {target!r} not found in text")
                start, end = at, at + len(str(target))
            span = char_span_to_token_span(text, int(start), int(end))
            if span is None:
                raise DataError(f"{source}: target span maps to no tokens")
        opinions.append(
            GoldOpinion(
                aspect_term=None if implicit else str(target),
                category=category,
                polarity=polarity,
                token_span=span,
            )
        )
    return TaggedSentence(text=text, tokens=tokens, opinions=opinions, source=source)


def load_semeval_xml(path: Union[str, Path]) -> list[TaggedSentence]:
    path = Path(path)
    root = ET.parse(path).getroot()
    sentences = []
    for index, node in enumerate(root.iter("sentence")):
        text_node = node.find("text")
        if text_node is None or not (text_node.text or "").strip():
            continue
        text = text_node.text
        raw_opinions = [
            {
                "target": opinion.get("target"),
                "category": opinion.get("category"),
                "polarity": opinion.get("polarity"),
                "from": opinion.get("from"),
                "to": opinion.get("to"),
            }
            for opinions in node.findall("Opinions")
            for opinion in opinions.findall("Opinion")
        ]
        sentences.append(
            _sentence_from_annotations(text, raw_opinions, f"{path.name}#{index}")
        )
    return sentences


def load_annotated_json(path: Union[str, Path]) -> list[TaggedSentence]:
    path = Path(path)
    doc = json.loads(path.read_text(encoding="utf-8"))
    return [
        _sentence_from_annotations(
            entry["text"], entry.get("opinions", []), f"{path.name}#{index}"
        )
        for index, entry in enumerate(doc["sentences"])
    ]


def load_training_data(path: Union[str, Path]) -> list[TaggedSentence]:
    path = Path(path)
    if path.suffix.lower() == ".xml":
        return load_semeval_xml(path)
    return load_annotated_json(path)


@dataclass(frozen=True)
class CorpusSentence:
    """One sentence of a review corpus, addressed for the exchange format."""

    expert: str
    alternative: str
    sentence_index: int
    text: str


def load_corpus_sentences(path: Union[str, Path]) -> tuple[list[CorpusSentence], list[str]]:
    """All sentences of a review-corpus JSON plus its criterion ids."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    criteria = [c if isinstance(c, str) else c["id"] for c in doc["criteria"]]
    sentences = []
    for review in doc["reviews"]:
        parts = review_sentences(
            review.get("title", ""), review.get("body", ""), review.get("sentences")
        )
        for index, text in enumerate(parts):
            sentences.append(
                CorpusSentence(review["expert"], review["alternative"], index, text)
            )
    return sentences, criteria


def load_corpus_gold(path: Union[str, Path]) -> list[TaggedSentence]:
    """Corpus gold annotations as tagged sentences (for evaluation)."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    by_key: dict[tuple[str, str, int], list[dict]] = {}
    for record in doc.get("gold_opinions") or []:
        key = (record["expert"], record["alternative"], record["sentence_index"])
        by_key.setdefault(key, []).append(record)
    sentences = []
    for review in doc["reviews"]:
        parts = review_sentences(
            review.get("title", ""), review.get("body", ""), review.get("sentences")
        )
        for index, text in enumerate(parts):
            records = by_key.get((review["expert"], review["alternative"], index), [])
            raw_opinions = []
            for record in records:
                term = record.get("aspect_term")
                raw_opinions.append(
                    {
                        "target": "NULL" if term is None else term,
                        "category": record["category"],
                        "polarity": record["polarity"],
                        "from": None,
                        "to": None,
                    }
                )
            sentences.append(
                _sentence_from_annotations(
                    text,
                    raw_opinions,
                    f"{review['expert']}/{review['alternative']}#{index}",
                )
            )
    return sentences


class Vocab:
    """Token vocabulary with reserved padding (0) and unknown (1) slots."""

    PAD = 0
    UNK = 1

    def __init__(self, tokens: Sequence[str]) -> None:
        self.index = {"<pad>": self.PAD, "<unk>": self.UNK}
        for token in tokens:
            key = token.lower()
            if key not in self.index:
                self.index[key] = len(self.index)

    def __len__(self) -> int:
        return len(self.index)

    def encode(self, tokens: Sequence[str]) -> list[int]:
        return [self.index.get(token.lower(), self.UNK) for token in tokens]

    def to_dict(self) -> dict:
        return dict(self.index)

    @classmethod
    def from_dict(cls, raw: dict) -> "Vocab":
        vocab = cls([])
        vocab.index = {token: int(idx) for token, idx in raw.items()}
        return vocab

    @classmethod
    def from_sentences(cls, sentences: Sequence[TaggedSentence]) -> "Vocab":
        return cls([token for sentence in sentences for token in sentence.tokens])
