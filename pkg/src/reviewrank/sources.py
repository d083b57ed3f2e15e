"""Uniform access to per-review opinion lists: gold annotations or an exchange file.

The opinion-exchange format is line-delimited JSON, one opinion per line:

    {"expert": "e1", "alternative": "x4", "sentence_index": 2,
     "aspect_term": "atmosphere", "category": "ambience", "polarity": "positive"}

``aspect_term`` is JSON null for implicit aspects; ``polarity`` is lowercase
positive|negative|neutral. Any extractor that writes this format can feed the
engine, the bundled tagger included.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import ExchangeError, UsageError
from .ingestion import Dataset
from .model import EvalMatrix, Opinion, Polarity

OpinionMap = dict[tuple[str, str], list[Opinion]]


@dataclass(frozen=True)
class GoldSource:
    """Use the dataset's own gold annotations."""


@dataclass(frozen=True)
class ExternalSource:
    """Use an opinion-exchange JSONL file produced by an external extractor.

    ``category_mapping`` optionally maps external category labels (for
    extractors emitting e.g. ENTITY#ATTRIBUTE strings) onto criterion ids.
    """

    path: Path
    category_mapping: Optional[Mapping[str, str]] = None

    def __init__(
        self,
        path: Union[str, Path],
        category_mapping: Optional[Mapping[str, str]] = None,
    ) -> None:
        object.__setattr__(self, "path", Path(path))
        object.__setattr__(
            self,
            "category_mapping",
            dict(category_mapping) if category_mapping is not None else None,
        )


OpinionSource = Union[GoldSource, ExternalSource]


def opinion_to_record(opinion: Opinion) -> dict:
    return {
        "expert": opinion.expert,
        "alternative": opinion.alternative,
        "sentence_index": opinion.sentence_index,
        "aspect_term": opinion.aspect_term,
        "category": opinion.category,
        "polarity": opinion.polarity.value,
    }


def write_exchange(opinions: Iterable[Opinion], path: Union[str, Path]) -> None:
    """Serialize opinions to the exchange JSONL format."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        for opinion in opinions:
            handle.write(json.dumps(opinion_to_record(opinion), sort_keys=True))
            handle.write("\n")


def read_exchange(
    path: Union[str, Path],
    dataset: Dataset,
    category_mapping: Optional[Mapping[str, str]] = None,
) -> list[Opinion]:
    """Parse an exchange file, validating every line against the dataset."""
    path = Path(path)
    reviews = {review.key(): review for review in dataset.reviews}
    criterion_ids = dataset.criterion_ids
    opinions = []
    with path.open(encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ExchangeError(f"{path}:{line_no}: bad JSON ({exc})") from exc
            for key in ("expert", "alternative", "sentence_index", "category", "polarity"):
                if key not in record:
                    raise ExchangeError(f"{path}:{line_no}: missing field {key!r}")
            review_key = (record["expert"], record["alternative"])
            review = reviews.get(review_key)
            if review is None:
                raise ExchangeError(
                    f"{path}:{line_no}: no review for "
                    f"({record['expert']}, {record['alternative']})"
                )
            category = record["category"]
            if category not in criterion_ids and category_mapping is not None:
                category = category_mapping.get(category, category)
            if category not in criterion_ids:
                raise ExchangeError(
                    f"{path}:{line_no}: unknown category {record['category']!r}"
                )
            sentence_index = int(record["sentence_index"])
            if not 0 <= sentence_index < review.sentence_count:
                raise ExchangeError(
                    f"{path}:{line_no}: sentence_index {sentence_index} out of range "
                    f"for review {review_key} with {review.sentence_count} sentences"
                )
            try:
                polarity = Polarity.parse(record["polarity"])
            except Exception:
                raise ExchangeError(
                    f"{path}:{line_no}: unknown polarity {record['polarity']!r}"
                ) from None
            opinions.append(
                Opinion(
                    expert=record["expert"],
                    alternative=record["alternative"],
                    sentence_index=sentence_index,
                    aspect_term=record.get("aspect_term"),
                    category=category,
                    polarity=polarity,
                )
            )
    return opinions


def collect_opinions(dataset: Dataset, source: OpinionSource) -> OpinionMap:
    """Group opinions by review key; every review maps to a list, possibly empty.

    Gold opinions come out sorted by (expert, alternative, sentence_index,
    annotation order); external opinions keep file order within each review.
    """
    grouped: OpinionMap = {review.key(): [] for review in dataset.reviews}
    if isinstance(source, GoldSource):
        if dataset.gold_opinions is None:
            raise UsageError("dataset has no gold annotations")
        expert_pos = {e: i for i, e in enumerate(dataset.experts)}
        alt_pos = {x: i for i, x in enumerate(dataset.alternatives)}
        ordered = sorted(
            enumerate(dataset.gold_opinions),
            key=lambda pair: (
                expert_pos[pair[1].expert],
                alt_pos[pair[1].alternative],
                pair[1].sentence_index,
                pair[0],
            ),
        )
        for _, opinion in ordered:
            grouped[(opinion.expert, opinion.alternative)].append(opinion)
    elif isinstance(source, ExternalSource):
        for opinion in read_exchange(source.path, dataset, source.category_mapping):
            grouped[(opinion.expert, opinion.alternative)].append(opinion)
    else:
        raise UsageError(f"unknown opinion source {source!r}")
    return grouped


def count_evaluations(
    opinions: Optional[Mapping[tuple[str, str], Sequence[Opinion]]],
    ine: Optional[Mapping[str, EvalMatrix]],
    criterion_ids: Sequence[str],
) -> dict[str, int]:
    """Per-criterion evaluation counts: opinions plus non-NA numerical ratings.

    Either side may be None to count only the other (the text-only and
    numeric-only scenarios); counts are additive across the two sides.
    """
    counts = {crit: 0 for crit in criterion_ids}
    if opinions is not None:
        for opinion_list in opinions.values():
            for opinion in opinion_list:
                counts[opinion.category] += 1
    if ine is not None:
        for matrix in ine.values():
            for crit in criterion_ids:
                counts[crit] += matrix.present_count(crit)
    return counts
