"""Per-token tag sequences and their decoding into opinion tuples."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

ASPECT_OUT = "O"
ASPECT_IN = "ASPECT"
NONE_TAG = "none"
POLARITIES = ("positive", "negative", "neutral")


@dataclass(frozen=True)
class TokenTagging:
    """Aligned aspect/category/polarity tags for one tokenized sentence.

    ``aspect_tags`` hold O/ASPECT, ``category_tags`` hold "none" or a
    criterion id, ``polarity_tags`` hold "none" or a polarity. A token may
    only carry a polarity where it carries a category.
    """

    tokens: tuple[str, ...]
    aspect_tags: tuple[str, ...]
    category_tags: tuple[str, ...]
    polarity_tags: tuple[str, ...]

    def __post_init__(self) -> None:
        n = len(self.tokens)
        if not (len(self.aspect_tags) == len(self.category_tags) == len(self.polarity_tags) == n):
            raise ValueError(
                f"tag sequences misaligned with {n} tokens: "
                f"{len(self.aspect_tags)}/{len(self.category_tags)}/{len(self.polarity_tags)}"
            )
        for tag in self.aspect_tags:
            if tag not in (ASPECT_OUT, ASPECT_IN):
                raise ValueError(f"bad aspect tag {tag!r}")
        for tag in self.polarity_tags:
            if tag != NONE_TAG and tag not in POLARITIES:
                raise ValueError(f"bad polarity tag {tag!r}")
        for category, polarity in zip(self.category_tags, self.polarity_tags):
            if polarity != NONE_TAG and category == NONE_TAG:
                raise ValueError("polarity tag without a category tag")


@dataclass(frozen=True)
class ExtractedOpinion:
    """One decoded opinion; ``token_span`` is None for implicit aspects."""

    aspect_term: Optional[str]
    category: str
    polarity: str
    token_span: Optional[tuple[int, int]] = None

    def to_exchange_record(self, expert: str, alternative: str, sentence_index: int) -> dict:
        return {
            "expert": expert,
            "alternative": alternative,
            "sentence_index": sentence_index,
            "aspect_term": self.aspect_term,
            "category": self.category,
            "polarity": self.polarity,
        }


def _majority_polarity(tags: Sequence[str]) -> str:
    votes = [tag for tag in tags if tag != NONE_TAG]
    if not votes:
        return "neutral"
    counts = {polarity: 0 for polarity in POLARITIES}
    for tag in votes:
        counts[tag] += 1
    return max(POLARITIES, key=lambda polarity: counts[polarity])


def tags_to_opinions(tagging: TokenTagging) -> list[ExtractedOpinion]:
    """Decode a tagging into opinions.

    Contiguous ASPECT runs sharing one category become one explicit opinion
    with the run's majority polarity. When the sentence has no aspect token at
    all, each distinct category tag yields one implicit opinion instead.
    """
    opinions: list[ExtractedOpinion] = []
    has_aspect = any(tag == ASPECT_IN for tag in tagging.aspect_tags)
    if has_aspect:
        i = 0
        n = len(tagging.tokens)
        while i < n:
            if tagging.aspect_tags[i] != ASPECT_IN or tagging.category_tags[i] == NONE_TAG:
                i += 1
                continue
            category = tagging.category_tags[i]
            j = i
            while (
                j < n
                and tagging.aspect_tags[j] == ASPECT_IN
                and tagging.category_tags[j] == category
            ):
                j += 1
            opinions.append(
                ExtractedOpinion(
                    aspect_term=" ".join(tagging.tokens[i:j]),
                    category=category,
                    polarity=_majority_polarity(tagging.polarity_tags[i:j]),
                    token_span=(i, j),
                )
            )
            i = j
        return opinions

    seen: list[str] = []
    for category in tagging.category_tags:
        if category != NONE_TAG and category not in seen:
            seen.append(category)
    for category in seen:
        member_polarities = [
            polarity
            for cat, polarity in zip(tagging.category_tags, tagging.polarity_tags)
            if cat == category
        ]
        opinions.append(
            ExtractedOpinion(
                aspect_term=None,
                category=category,
                polarity=_majority_polarity(member_polarities),
                token_span=None,
            )
        )
    return opinions
