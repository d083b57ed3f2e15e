"""Loading and validation of review corpora and matrix/count fixtures.

Corpus format (UTF-8 JSON, one document):

    {
      "experts": ["e1", ...],
      "alternatives": ["x1", ...],
      "criteria": ["restaurant", ...]            # or [{"id": ..., "display_name": ...}]
      "tau": 2,
      "reviews": [
        {"expert": "e1", "alternative": "x1",
         "title": "...", "body": "...",          # or "sentences": ["...", ...]
         "ratings": {"restaurant": 4}},          # 1-based levels; null/absent = NA
        ...
      ],
      "gold_opinions": [                          # optional
        {"expert": "e1", "alternative": "x1", "sentence_index": 0,
         "aspect_term": null, "category": "restaurant", "polarity": "positive"},
        ...
      ]
    }

The review title is sentence 0; body sentences are 1..n. When "sentences" is
given instead of "body" it lists the body sentences only (the title is still
prepended as sentence 0).

Matrix fixtures are CSV: first row = criterion ids (after a corner cell),
first column = alternative ids, cells = decimal numbers or the literal "NA".
Counts fixtures are CSV with a "criterion,count" header.
"""

from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import (
    CompletenessError,
    DuplicateReviewError,
    MappingError,
    RangeError,
    SchemaError,
    ValidationError,
)
from .model import Criterion, EvalMatrix, Opinion, Polarity, Review, Scale

#: Entity-level collapse of the SemEval-2016 restaurant-domain category labels
#: (ENTITY#ATTRIBUTE) onto this engine's criterion ids.
DEFAULT_SEMEVAL_MAPPING: dict[str, str] = {
    "RESTAURANT#GENERAL": "restaurant",
    "RESTAURANT#PRICES": "restaurant",
    "RESTAURANT#MISCELLANEOUS": "restaurant",
    "FOOD#PRICES": "food",
    "FOOD#QUALITY": "food",
    "FOOD#STYLE_OPTIONS": "food",
    "DRINKS#PRICES": "drinks",
    "DRINKS#QUALITY": "drinks",
    "DRINKS#STYLE_OPTIONS": "drinks",
    "AMBIENCE#GENERAL": "ambience",
    "SERVICE#GENERAL": "service",
    "LOCATION#GENERAL": "location",
}


@dataclass(frozen=True)
class CategoryMapping:
    """Total map from external category labels to criterion ids."""

    table: Mapping[str, str] = field(default_factory=lambda: dict(DEFAULT_SEMEVAL_MAPPING))

    def apply(self, label: str) -> str:
        try:
            return self.table[label]
        except KeyError:
            raise MappingError(f"no mapping for category label {label!r}") from None


@dataclass(frozen=True)
class Dataset:
    """A validated corpus: experts x alternatives, reviews, optional gold opinions."""

    experts: tuple[str, ...]
    alternatives: tuple[str, ...]
    criteria: tuple[Criterion, ...]
    scale: Scale
    reviews: tuple[Review, ...]
    gold_opinions: Optional[tuple[Opinion, ...]] = None

    @property
    def criterion_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.criteria)

    def review_for(self, expert: str, alternative: str) -> Optional[Review]:
        for review in self.reviews:
            if review.key() == (expert, alternative):
                return review
        return None

    def review_keys(self) -> list[tuple[str, str]]:
        return [(e, x) for e in self.experts for x in self.alternatives]


def _unique(values: Sequence[str], what: str) -> tuple[str, ...]:
    out = tuple(values)
    if len(set(out)) != len(out):
        raise ValidationError(f"duplicate {what} ids: {sorted(out)}")
    return out


def _parse_criteria(raw: Iterable) -> tuple[Criterion, ...]:
    criteria = []
    for entry in raw:
        if isinstance(entry, str):
            criteria.append(Criterion(entry))
        elif isinstance(entry, dict):
            criteria.append(Criterion(entry["id"], entry.get("display_name", "")))
        else:
            raise SchemaError(f"bad criterion entry {entry!r}")
    ids = [c.id for c in criteria]
    if len(set(ids)) != len(ids):
        raise ValidationError(f"duplicate criterion ids: {ids}")
    return tuple(criteria)


def parse_opinion_record(record: Mapping, criterion_ids: Sequence[str]) -> Opinion:
    """Build an Opinion from a JSON-ish record, checking the category id."""
    category = record["category"]
    if category not in criterion_ids:
        raise MappingError(f"unknown category {category!r} in opinion record")
    return Opinion(
        expert=record["expert"],
        alternative=record["alternative"],
        sentence_index=int(record["sentence_index"]),
        aspect_term=record.get("aspect_term"),
        polarity=Polarity.parse(record["polarity"]),
        category=category,
    )


def build_dataset(
    experts: Sequence[str],
    alternatives: Sequence[str],
    criteria: Sequence[Union[str, Criterion]],
    tau: int,
    reviews: Sequence[Review],
    gold_opinions: Optional[Sequence[Opinion]] = None,
    mode: str = "complete",
) -> Dataset:
    """Validate in-memory pieces into a Dataset.

    ``mode`` is "complete" (every (expert, alternative) pair must have exactly
    one review) or "lenient" (missing pairs are tolerated with a warning and
    behave as all-NA rows downstream).
    """
    if mode not in ("complete", "lenient"):
        raise SchemaError(f"unknown validation mode {mode!r}")
    experts = _unique(experts, "expert")
    alternatives = _unique(alternatives, "alternative")
    crits = _parse_criteria(
        [c if isinstance(c, (str, dict)) else c.id for c in criteria]
    )
    scale = Scale(tau)
    criterion_ids = tuple(c.id for c in crits)

    seen: dict[tuple[str, str], Review] = {}
    for review in reviews:
        if review.expert not in experts:
            raise ValidationError(f"review references unknown expert {review.expert!r}")
        if review.alternative not in alternatives:
            raise ValidationError(
                f"review references unknown alternative {review.alternative!r}"
            )
        if review.key() in seen:
            raise DuplicateReviewError(
                f"duplicate review for ({review.expert}, {review.alternative})"
            )
        for crit_id, level in review.ratings.items():
            if crit_id not in criterion_ids:
                raise SchemaError(
                    f"review ({review.expert}, {review.alternative}) rates "
                    f"unknown criterion {crit_id!r}"
                )
            if not isinstance(level, int) or isinstance(level, bool) or not (
                1 <= level <= scale.levels
            ):
                raise RangeError(
                    f"review ({review.expert}, {review.alternative}): rating level "
                    f"{level!r} for {crit_id!r} outside 1..{scale.levels}"
                )
        seen[review.key()] = review

    missing = [key for key in ((e, x) for e in experts for x in alternatives) if key not in seen]
    if missing:
        if mode == "complete":
            raise CompletenessError(
                "missing reviews for pairs: "
                + ", ".join(f"({e}, {x})" for e, x in missing)
            )
        warnings.warn(
            f"{len(missing)} (expert, alternative) pairs have no review; "
            "they will behave as all-NA rows",
            stacklevel=2,
        )

    gold: Optional[tuple[Opinion, ...]] = None
    if gold_opinions is not None:
        checked = []
        for opinion in gold_opinions:
            review = seen.get((opinion.expert, opinion.alternative))
            if review is None:
                raise ValidationError(
                    f"gold opinion references missing review "
                    f"({opinion.expert}, {opinion.alternative})"
                )
            if opinion.category not in criterion_ids:
                raise MappingError(
                    f"gold opinion uses unknown category {opinion.category!r}"
                )
            if opinion.sentence_index >= review.sentence_count:
                raise ValidationError(
                    f"gold opinion sentence_index {opinion.sentence_index} out of "
                    f"range for review ({opinion.expert}, {opinion.alternative}) "
                    f"with {review.sentence_count} sentences"
                )
            checked.append(opinion)
        gold = tuple(checked)

    return Dataset(experts, alternatives, crits, scale, tuple(reviews), gold)


def load_dataset(path: Union[str, Path], mode: str = "complete") -> Dataset:
    """Load and validate a corpus JSON file."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc
    for key in ("experts", "alternatives", "criteria", "tau", "reviews"):
        if key not in doc:
            raise SchemaError(f"{path}: missing top-level key {key!r}")

    reviews = []
    for raw in doc["reviews"]:
        sentences: tuple[str, ...] = ()
        if "sentences" in raw:
            sentences = (raw.get("title", ""),) + tuple(raw["sentences"])
        ratings = {
            crit: level
            for crit, level in (raw.get("ratings") or {}).items()
            if level is not None
        }
        reviews.append(
            Review(
                expert=raw["expert"],
                alternative=raw["alternative"],
                title=raw.get("title", ""),
                body=raw.get("body", ""),
                ratings=ratings,
                sentences=sentences,
            )
        )

    gold = None
    if "gold_opinions" in doc and doc["gold_opinions"] is not None:
        criterion_ids = [
            c if isinstance(c, str) else c["id"] for c in doc["criteria"]
        ]
        gold = [parse_opinion_record(rec, criterion_ids) for rec in doc["gold_opinions"]]

    return build_dataset(
        experts=doc["experts"],
        alternatives=doc["alternatives"],
        criteria=doc["criteria"],
        tau=doc["tau"],
        reviews=reviews,
        gold_opinions=gold,
        mode=mode,
    )


def map_categories(
    raw_opinions: Sequence[Opinion], mapping: CategoryMapping
) -> list[Opinion]:
    """Replace external category labels with criterion ids, preserving multiplicity."""
    return [
        Opinion(
            expert=op.expert,
            alternative=op.alternative,
            sentence_index=op.sentence_index,
            aspect_term=op.aspect_term,
            category=mapping.apply(op.category),
            polarity=op.polarity,
        )
        for op in raw_opinions
    ]


def build_ine(dataset: Dataset) -> dict[str, EvalMatrix]:
    """One numerical-evaluation matrix per expert from the reviews' ratings.

    Cells are the scale values of the rating levels; criteria the platform
    never lets experts rate simply come out as NA columns.
    """
    matrices = {}
    alternatives = dataset.alternatives
    criterion_ids = dataset.criterion_ids
    for expert in dataset.experts:
        cells: dict[tuple[str, str], float] = {}
        for review in dataset.reviews:
            if review.expert != expert:
                continue
            for crit_id, level in review.ratings.items():
                cells[(review.alternative, crit_id)] = dataset.scale.level_to_value(level)
        matrices[expert] = EvalMatrix(
            alternatives, criterion_ids, dataset.scale.tau, cells
        )
    return matrices


# ---------------------------------------------------------------------------
# CSV fixtures


def load_matrix_fixture(
    path: Union[str, Path],
    criteria: Sequence[str],
    scale: Scale,
    alternatives: Optional[Sequence[str]] = None,
) -> EvalMatrix:
    """Read a matrix CSV; cell values must parse as decimals or be "NA"."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        rows = list(csv.reader(handle))
    if not rows:
        raise SchemaError(f"{path}: empty matrix fixture")
    header = rows[0][1:]
    known = list(criteria)
    for col in header:
        if col not in known:
            raise SchemaError(f"{path}: unknown criterion column {col!r}")
    row_labels = []
    cells: dict[tuple[str, str], float] = {}
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        label = row[0]
        row_labels.append(label)
        if len(row) - 1 != len(header):
            raise SchemaError(
                f"{path}:{line_no}: expected {len(header)} cells, got {len(row) - 1}"
            )
        for col, cell in zip(header, row[1:]):
            text = cell.strip()
            if text == "NA":
                continue
            try:
                cells[(label, col)] = float(text)
            except ValueError:
                raise SchemaError(
                    f"{path}:{line_no}: cell {text!r} is neither a decimal nor NA"
                ) from None
    if alternatives is not None and set(row_labels) != set(alternatives):
        raise SchemaError(
            f"{path}: alternative labels {row_labels} do not match {list(alternatives)}"
        )
    try:
        return EvalMatrix(row_labels, header, scale.tau, cells)
    except RangeError as exc:
        raise RangeError(f"{path}: {exc}") from None


def write_matrix_fixture(matrix: EvalMatrix, path: Union[str, Path]) -> None:
    """Write a matrix in the same CSV fixture format load_matrix_fixture reads."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow([""] + list(matrix.cols))
        for row in matrix.rows:
            writer.writerow(
                [row]
                + [
                    "NA" if v is None else repr(v)
                    for v in matrix.row_values(row)
                ]
            )


def load_counts_fixture(path: Union[str, Path]) -> dict[str, int]:
    """Read a criterion,count CSV into a plain dict."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        rows = list(csv.reader(handle))
    if not rows or [cell.strip() for cell in rows[0]] != ["criterion", "count"]:
        raise SchemaError(f"{path}: expected a 'criterion,count' header")
    counts: dict[str, int] = {}
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 2:
            raise SchemaError(f"{path}:{line_no}: expected two cells")
        crit, raw = row[0].strip(), row[1].strip()
        if crit in counts:
            raise SchemaError(f"{path}:{line_no}: duplicate criterion {crit!r}")
        try:
            count = int(raw)
        except ValueError:
            raise SchemaError(f"{path}:{line_no}: count {raw!r} is not an integer") from None
        if count < 0:
            raise SchemaError(f"{path}:{line_no}: negative count for {crit!r}")
        counts[crit] = count
    return counts


def write_counts_fixture(counts: Mapping[str, int], path: Union[str, Path]) -> None:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["criterion", "count"])
        for crit, count in counts.items():
            writer.writerow([crit, count])
