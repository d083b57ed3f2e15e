"""Core value objects: scale arithmetic, opinions, reviews, and NA-aware matrices.

Everything here is an immutable value object; "updates" such as
:meth:`EvalMatrix.set` return a new instance. A missing matrix cell is a
first-class NA state (``None`` from :meth:`EvalMatrix.get`), never a sentinel
number, so downstream arithmetic has to branch on it explicitly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence

from .errors import RangeError, UnknownLabelError, UsageError

_SENTENCE_BREAK = re.compile(r"(?<=[.!?])\s+")


def split_sentences(text: str) -> tuple[str, ...]:
    """Split a review body on sentence-final punctuation followed by whitespace."""
    stripped = text.strip()
    if not stripped:
        return ()
    return tuple(part for part in _SENTENCE_BREAK.split(stripped) if part)


@dataclass(frozen=True)
class Scale:
    """Symmetric intensity scale: 2*tau + 1 rating levels mapped onto [-tau, tau].

    Level r (1-based) maps to the centered value r - (tau + 1), so the middle
    level is 0 and the extremes are -tau and +tau. Only odd level counts are
    representable by construction.
    """

    tau: int

    def __post_init__(self) -> None:
        if not isinstance(self.tau, int) or isinstance(self.tau, bool) or self.tau < 1:
            raise RangeError(f"tau must be a positive integer, got {self.tau!r}")

    @property
    def levels(self) -> int:
        return 2 * self.tau + 1

    def level_to_value(self, level: int) -> float:
        if not isinstance(level, int) or isinstance(level, bool):
            raise RangeError(f"rating level must be an integer, got {level!r}")
        if not 1 <= level <= self.levels:
            raise RangeError(
                f"rating level {level} outside 1..{self.levels} (tau={self.tau})"
            )
        return float(level - (self.tau + 1))

    def check_value(self, value: float) -> float:
        # convex combinations of in-range values can overshoot the bound by a
        # few ulps; tolerate that and clamp, reject anything larger
        v = float(value)
        if not -self.tau - 1e-9 <= v <= self.tau + 1e-9:
            raise RangeError(f"value {value!r} outside [-{self.tau}, {self.tau}]")
        return min(max(v, float(-self.tau)), float(self.tau))


def level_to_value(level: int, scale: Scale) -> float:
    """Map a 1-based rating level onto the scale's [-tau, tau] interval."""
    return scale.level_to_value(level)


class Polarity(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"

    @classmethod
    def parse(cls, raw: str) -> "Polarity":
        try:
            return cls(raw)
        except ValueError:
            raise RangeError(f"unknown polarity {raw!r}") from None


@dataclass(frozen=True)
class Criterion:
    """One evaluation criterion; ``id`` is the stable key used everywhere."""

    id: str
    display_name: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise RangeError("criterion id must be non-empty")
        if not self.display_name:
            object.__setattr__(self, "display_name", self.id)


@dataclass(frozen=True)
class Opinion:
    """One distilled (aspect term, category, polarity) tuple from a review sentence.

    ``aspect_term`` is None for implicit aspects (the sentence evaluates the
    category without naming a surface term).
    """

    expert: str
    alternative: str
    sentence_index: int
    aspect_term: Optional[str]
    category: str
    polarity: Polarity

    def __post_init__(self) -> None:
        if self.sentence_index < 0:
            raise RangeError(
                f"sentence_index must be >= 0, got {self.sentence_index}"
            )
        if not isinstance(self.polarity, Polarity):
            object.__setattr__(self, "polarity", Polarity.parse(self.polarity))


@dataclass(frozen=True)
class Review:
    """One expert's written evaluation of one alternative.

    ``sentences`` always starts with the title (sentence 0); body sentences
    follow as 1..n. ``ratings`` maps criterion ids to raw 1-based levels, not
    scale values.
    """

    expert: str
    alternative: str
    title: str
    body: str
    ratings: Mapping[str, int] = field(default_factory=dict)
    sentences: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.sentences:
            object.__setattr__(
                self, "sentences", (self.title,) + split_sentences(self.body)
            )
        object.__setattr__(self, "ratings", dict(self.ratings))

    @property
    def sentence_count(self) -> int:
        return len(self.sentences)

    def key(self) -> tuple[str, str]:
        return (self.expert, self.alternative)


class EvalMatrix:
    """Alternatives x criteria grid of optional values in [-tau, tau].

    Rows are alternative ids, columns criterion ids. Cells are stored sparsely;
    an absent cell is NA. Instances are immutable: :meth:`set` returns a new
    matrix.
    """

    __slots__ = ("rows", "cols", "tau", "_cells")

    def __init__(
        self,
        rows: Sequence[str],
        cols: Sequence[str],
        tau: int,
        cells: Optional[Mapping[tuple[str, str], float]] = None,
    ) -> None:
        self.rows: tuple[str, ...] = tuple(rows)
        self.cols: tuple[str, ...] = tuple(cols)
        if len(set(self.rows)) != len(self.rows):
            raise UsageError("duplicate row labels in matrix")
        if len(set(self.cols)) != len(self.cols):
            raise UsageError("duplicate column labels in matrix")
        self.tau = int(tau)
        scale = Scale(self.tau)
        checked: dict[tuple[str, str], float] = {}
        for (row, col), value in (cells or {}).items():
            self._require_labels(row, col)
            if value is not None:
                checked[(row, col)] = scale.check_value(value)
        self._cells = checked

    def _require_labels(self, row: str, col: str) -> None:
        if row not in self.rows:
            raise UnknownLabelError(f"unknown alternative {row!r}")
        if col not in self.cols:
            raise UnknownLabelError(f"unknown criterion {col!r}")

    def get(self, row: str, col: str) -> Optional[float]:
        """Cell value, or None for NA."""
        self._require_labels(row, col)
        return self._cells.get((row, col))

    def set(self, row: str, col: str, value: Optional[float]) -> "EvalMatrix":
        """Return a copy with one cell replaced (None clears the cell to NA)."""
        self._require_labels(row, col)
        cells = dict(self._cells)
        if value is None:
            cells.pop((row, col), None)
        else:
            cells[(row, col)] = Scale(self.tau).check_value(value)
        return EvalMatrix(self.rows, self.cols, self.tau, cells)

    def row_values(self, row: str) -> tuple[Optional[float], ...]:
        return tuple(self.get(row, col) for col in self.cols)

    def col_values(self, col: str) -> tuple[Optional[float], ...]:
        return tuple(self.get(row, col) for row in self.rows)

    def present_count(self, col: str) -> int:
        """Number of non-NA cells in one column."""
        return sum(1 for v in self.col_values(col) if v is not None)

    def items(self) -> Iterable[tuple[tuple[str, str], float]]:
        for row in self.rows:
            for col in self.cols:
                value = self._cells.get((row, col))
                if value is not None:
                    yield (row, col), value

    @classmethod
    def from_grid(
        cls,
        rows: Sequence[str],
        cols: Sequence[str],
        tau: int,
        grid: Sequence[Sequence[Optional[float]]],
    ) -> "EvalMatrix":
        """Build from a dense row-major grid with None for NA."""
        if len(grid) != len(rows):
            raise UsageError(f"expected {len(rows)} grid rows, got {len(grid)}")
        cells: dict[tuple[str, str], float] = {}
        for row, values in zip(rows, grid):
            if len(values) != len(cols):
                raise UsageError(
                    f"row {row!r}: expected {len(cols)} values, got {len(values)}"
                )
            for col, value in zip(cols, values):
                if value is not None:
                    cells[(row, col)] = value
        return cls(rows, cols, tau, cells)

    def to_grid(self) -> list[list[Optional[float]]]:
        return [list(self.row_values(row)) for row in self.rows]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EvalMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.tau == other.tau
            and self._cells == other._cells
        )

    def __repr__(self) -> str:
        return (
            f"EvalMatrix(rows={self.rows!r}, cols={self.cols!r}, tau={self.tau}, "
            f"{len(self._cells)} cells)"
        )


def matrix_get(matrix: EvalMatrix, alt: str, crit: str) -> Optional[float]:
    return matrix.get(alt, crit)


def matrix_set(matrix: EvalMatrix, alt: str, crit: str, value: Optional[float]) -> EvalMatrix:
    return matrix.set(alt, crit, value)


class PreferenceVector:
    """Final per-alternative preferences; entries may be NA (None)."""

    __slots__ = ("alternatives", "tau", "_values")

    def __init__(
        self,
        alternatives: Sequence[str],
        tau: int,
        values: Mapping[str, Optional[float]],
    ) -> None:
        self.alternatives: tuple[str, ...] = tuple(alternatives)
        self.tau = int(tau)
        scale = Scale(self.tau)
        checked: dict[str, float] = {}
        for alt, value in values.items():
            if alt not in self.alternatives:
                raise UnknownLabelError(f"unknown alternative {alt!r}")
            if value is not None:
                checked[alt] = scale.check_value(value)
        self._values = checked

    def get(self, alt: str) -> Optional[float]:
        if alt not in self.alternatives:
            raise UnknownLabelError(f"unknown alternative {alt!r}")
        return self._values.get(alt)

    def present(self) -> dict[str, float]:
        return dict(self._values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PreferenceVector):
            return NotImplemented
        return (
            self.alternatives == other.alternatives
            and self.tau == other.tau
            and self._values == other._values
        )

    def __repr__(self) -> str:
        entries = ", ".join(
            f"{alt}={self._values.get(alt)}" for alt in self.alternatives
        )
        return f"PreferenceVector({entries})"
