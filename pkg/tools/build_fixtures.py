#!/usr/bin/env python3
"""Build the case-study fixtures: matrices, counts, corpus, exchange, config.

The per-expert matrices and the count targets are transcriptions of the
reference case-study tables. The corpus is synthetic: its ratings reproduce
the numerical matrices exactly, and its gold/extracted opinion multisets are
constructed so that

* the per-review distillation reproduces the target textual matrices,
* the per-criterion opinion totals hit the reference evaluation counts, and
* review t(e1, x4) carries exactly the four documented annotations.

Opinion counts per cell are solved from the cell value v = tau*(p-n)/t: the
value fixes p-n as a fraction of t, so t must be a multiple of a per-value
step; slack between the minimum and the per-criterion target is spread over
cells whose step is 1.

Run from the repo root: python3 tools/build_fixtures.py
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from reviewrank import (  # noqa: E402
    EvalMatrix,
    Opinion,
    Polarity,
    Review,
    Scale,
    build_dataset,
    build_ine,
    build_ite,
    collect_opinions,
    count_evaluations,
    GoldSource,
    write_counts_fixture,
    write_exchange,
    write_matrix_fixture,
)

TAU = 2
CRITERIA = ("restaurant", "food", "service", "drinks", "ambience", "location")
ALTERNATIVES = ("x1", "x2", "x3", "x4")
EXPERTS = ("e1", "e2", "e3", "e4", "e5", "e6")

NA = None

# --- Transcribed per-expert textual matrices (extracted-opinion run) --------

ITE_EXTRACTED = {
    "e1": [
        [2, NA, NA, NA, NA, 2],
        [2, 2, NA, NA, NA, NA],
        [2, NA, 2, NA, NA, 2],
        [2, 2, NA, NA, 2, NA],
    ],
    "e2": [
        [2, 2, 2, NA, 2, 2],
        [2, 2, NA, NA, NA, NA],
        [2, 2, 2, NA, 2, NA],
        [2, 2, 2, NA, NA, NA],
    ],
    "e3": [
        [2, 1.5, NA, 2, 2, NA],
        [2, 2, 2, NA, 2, NA],
        [2, 1.56, NA, 2, NA, NA],
        [2, 2, 2, NA, 2, NA],
    ],
    "e4": [
        [2, 2, 2, 2, 2, 2],
        [2, 2, NA, NA, NA, NA],
        [2, NA, 2, 2, 2, 2],
        [0.4, 1.5, 0, NA, NA, NA],
    ],
    "e5": [
        [2, 2, NA, NA, 2, 2],
        [2, 2, 2, NA, NA, 2],
        [2, 2, 2, NA, 2, NA],
        [2, 2, NA, NA, 2, NA],
    ],
    "e6": [
        [2, 2, 2, NA, 2, NA],
        [2, 2, -2, NA, 2, NA],
        [2, 2, 2, NA, 2, NA],
        [2, NA, 2, NA, NA, NA],
    ],
}

# --- Transcribed per-expert numerical matrices ------------------------------

INE = {
    "e1": [
        [1, NA, NA, NA, NA, NA],
        [2, NA, NA, NA, NA, NA],
        [1, NA, NA, NA, NA, NA],
        [1, NA, NA, NA, NA, NA],
    ],
    "e2": [
        [1, NA, NA, NA, NA, NA],
        [2, NA, NA, NA, NA, NA],
        [2, NA, NA, NA, NA, NA],
        [1, NA, NA, NA, NA, NA],
    ],
    "e3": [
        [1, 1, 2, NA, NA, NA],
        [2, 2, 2, NA, NA, NA],
        [-1, -1, 0, NA, NA, NA],
        [1, 1, 2, NA, NA, NA],
    ],
    "e4": [
        [1, 2, 1, NA, NA, NA],
        [2, 2, 1, NA, NA, NA],
        [2, 2, 2, NA, NA, NA],
        [-1, -1, -2, NA, NA, NA],
    ],
    "e5": [
        [1, 1, 1, NA, NA, NA],
        [2, 2, 2, NA, NA, NA],
        [2, 2, 2, NA, NA, NA],
        [2, 1, 2, NA, NA, NA],
    ],
    "e6": [
        [1, 1, 1, NA, NA, NA],
        [0, NA, NA, NA, NA, NA],
        [1, 1, 2, NA, NA, NA],
        [2, 2, 2, NA, NA, NA],
    ],
}

# --- Transcribed per-expert preference matrices (combined run) --------------

IP_COMBINED = {
    "e1": [
        [1.5, NA, NA, NA, NA, 2],
        [2, 2, NA, NA, NA, NA],
        [1.5, NA, 2, NA, NA, 2],
        [1.5, 2, NA, NA, 2, NA],
    ],
    "e2": [
        [1.5, 2, 2, NA, 2, 2],
        [2, 2, NA, NA, NA, NA],
        [2, 2, 2, NA, 2, NA],
        [1.5, 2, 2, NA, NA, NA],
    ],
    "e3": [
        [1.5, 1.25, 2, 2, 2, NA],
        [2, 2, 2, NA, 2, NA],
        [0.5, 0.28, 0, 2, NA, NA],
        [1.5, 1.5, 2, NA, 2, NA],
    ],
    "e4": [
        [1.5, 2, 1.5, 2, 2, 2],
        [2, 2, 1, NA, NA, NA],
        [2, 2, 2, 2, 2, 2],
        [-0.3, 0.25, -1, NA, NA, NA],
    ],
    "e5": [
        [1.5, 1.5, 1, NA, 2, 2],
        [2, 2, 2, NA, NA, 2],
        [2, 2, 2, NA, 2, NA],
        [2, 1.5, 2, NA, 2, NA],
    ],
    "e6": [
        [1.5, 1.5, 1.5, NA, 2, NA],
        [1, 2, -2, NA, 2, NA],
        [1.5, 1.5, 2, NA, 2, NA],
        [2, 2, 2, NA, NA, NA],
    ],
}

# --- Transcribed per-expert preference matrices (annotated run) -------------

IP_ANNOTATED = {
    "e1": [
        [1.5, NA, NA, NA, NA, 2],
        [2, 2, 2, NA, NA, NA],
        [1, NA, 2, NA, 2, 2],
        [1.5, 2, NA, NA, 2, NA],
    ],
    "e2": [
        [1.5, 2, 1, NA, NA, 2],
        [2, 2, NA, NA, NA, NA],
        [2, NA, 2, NA, 2, NA],
        [0.5, -2, -2, NA, NA, NA],
    ],
    "e3": [
        [1.5, 0.93, 0, 2, NA, NA],
        [1, 1.86, 2, NA, 2, NA],
        [0.5, -1.1, -0.5, -2, NA, NA],
        [1.5, 0.7, 2, NA, 2, NA],
    ],
    "e4": [
        [1.5, 2, 1.5, 2, 2, 2],
        [2, 2, 1, NA, NA, NA],
        [2, 2, 2, NA, 2, 2],
        [-1.5, -1.5, -2, NA, -2, NA],
    ],
    "e5": [
        [1.5, 1.5, 1, NA, NA, 2],
        [1.5, 2, 2, NA, NA, 0],
        [2, 2, 2, NA, 0.67, NA],
        [2, 1.5, 2, NA, 2, NA],
    ],
    "e6": [
        [1.5, 1.5, 1.5, NA, 2, NA],
        [0, 2, 2, NA, 1, NA],
        [1.3, 1.5, 2, NA, 2, 2],
        [2, 2, 2, NA, 2, NA],
    ],
}

# --- Transcribed collective matrices, one per scenario ----------------------

CP_COMBINED = [
    [1.5, 1.65, 1.6, 2, 2, 2],
    [1.83, 2, 0.75, NA, 2, 2],
    [1.58, 1.56, 1.67, 2, 2, 2],
    [1.37, 1.54, 1.4, NA, 2, NA],
]

CP_ANNOTATED = [
    [1.5, 1.59, 1, 2, 2, 2],
    [1.42, 1.98, 1.8, NA, 1.5, 0],
    [1.47, 1.1, 1.58, -2, 1.73, 2],
    [1, 0.45, 0.4, NA, 1.2, NA],
]

CP_NUMERIC_ONLY = [
    [1, 1.25, 1.25, NA, NA, NA],
    [1.67, 2, 1.67, NA, NA, NA],
    [1.17, 1, 1.5, NA, NA, NA],
    [1, 0.75, 1, NA, NA, NA],
]

CP_TEXT_ONLY = [
    [2, 1.9, 2, 2, 2, 2],
    [2, 2, 0.67, NA, 2, 2],
    [2, 1.89, 2, 2, 2, 2],
    [1.73, 1.9, 1.5, NA, 2, NA],
]

# --- Reference evaluation counts --------------------------------------------

EXTRACTED_OPINION_COUNTS = {
    "restaurant": 59,
    "food": 90,
    "service": 19,
    "drinks": 8,
    "ambience": 30,
    "location": 11,
}

COMBINED_TOTAL_COUNTS = {
    "restaurant": 83,
    "food": 105,
    "service": 34,
    "drinks": 8,
    "ambience": 30,
    "location": 11,
}

ANNOTATED_WEIGHTS = {
    "restaurant": 0.339,
    "food": 0.322,
    "service": 0.159,
    "drinks": 0.021,
    "ambience": 0.113,
    "location": 0.046,
}

# Gold opinion totals chosen so that, with the 24/15/15 rating counts added,
# the attention weights round to ANNOTATED_WEIGHTS at 3 decimals (N = 239).
GOLD_OPINION_COUNTS = {
    "restaurant": 57,
    "food": 62,
    "service": 23,
    "drinks": 5,
    "ambience": 27,
    "location": 11,
}

F = Fraction

# Exact gold textual values, derived cell-wise from the annotated preference
# and numerical matrices (ite = 2*ip - ine where both sides pin it down).
GOLD_ITE = {
    "e1": [
        [F(2), NA, NA, NA, NA, F(2)],
        [NA, F(2), F(2), NA, NA, NA],
        [F(1), NA, F(2), NA, F(2), F(2)],
        ["FIX", "FIX", NA, NA, "FIX", NA],
    ],
    "e2": [
        [F(2), F(2), F(1), NA, NA, F(2)],
        [NA, F(2), NA, NA, NA, NA],
        [NA, NA, F(2), NA, F(2), NA],
        [F(0), F(-2), F(-2), NA, NA, NA],
    ],
    "e3": [
        [F(2), F(6, 7), F(-2), F(2), NA, NA],
        [F(0), F(12, 7), NA, NA, F(2), NA],
        [F(2), F(-6, 5), F(-1), F(-2), NA, NA],
        [F(2), F(2, 5), NA, NA, F(2), NA],
    ],
    "e4": [
        [F(2), NA, F(2), F(2), F(2), F(2)],
        [NA, NA, NA, NA, NA, NA],
        [NA, NA, NA, NA, F(2), F(2)],
        [F(-2), F(-2), NA, NA, F(-2), NA],
    ],
    "e5": [
        [F(2), F(2), NA, NA, NA, F(2)],
        [F(1), NA, NA, NA, NA, F(0)],
        [NA, NA, NA, NA, F(2, 3), NA],
        [NA, F(2), NA, NA, F(2), NA],
    ],
    "e6": [
        [F(2), F(2), F(2), NA, F(2), NA],
        [NA, F(2), F(2), NA, F(1), NA],
        [F(8, 5), F(2), NA, NA, F(2), F(2)],
        [NA, NA, NA, NA, F(2), NA],
    ],
}

# Cells the annotated preference matrices leave undetermined (ip == ine); the
# construction may include them to reach the per-criterion totals.
GOLD_OPTIONAL = {
    "restaurant": [
        ("e1", "x2", F(2)),
        ("e2", "x2", F(2)),
        ("e2", "x3", F(2)),
        ("e4", "x2", F(2)),
        ("e4", "x3", F(2)),
        ("e5", "x3", F(2)),
        ("e5", "x4", F(2)),
        ("e6", "x2", F(0)),
        ("e6", "x4", F(2)),
    ],
    "food": [
        ("e4", "x1", F(2)),
        ("e4", "x2", F(2)),
        ("e4", "x3", F(2)),
        ("e5", "x2", F(2)),
        ("e5", "x3", F(2)),
        ("e6", "x4", F(2)),
    ],
    "service": [
        ("e3", "x2", F(2)),
        ("e3", "x4", F(2)),
        ("e4", "x2", F(1)),
        ("e4", "x3", F(2)),
        ("e4", "x4", F(-2)),
        ("e5", "x1", F(1)),
        ("e5", "x2", F(2)),
        ("e5", "x3", F(2)),
        ("e5", "x4", F(2)),
        ("e6", "x3", F(2)),
        ("e6", "x4", F(2)),
    ],
    "drinks": [],
    "ambience": [],
    "location": [],
}

# The documented annotation of review t(e1, x4): two implicit overall
# opinions, one explicit ambience aspect, one explicit food aspect.
FIXED_REVIEW = ("e1", "x4")
FIXED_TITLE = "Consistently good."
FIXED_BODY_SENTENCES = (
    "I keep coming back year after year.",
    "Great atmosphere and fun people watching.",
    "The food is reliably good and arrives fast.",
)
FIXED_OPINIONS = (
    (0, None, "restaurant", "positive"),
    (1, None, "restaurant", "positive"),
    (2, "atmosphere", "ambience", "positive"),
    (3, "food", "food", "positive"),
)

ASPECT_TERMS = {
    "restaurant": (),  # implicit
    "food": ("food", "menu", "dessert", "bread", "starters", "mains"),
    "service": ("service", "staff", "waiter", "manager"),
    "drinks": ("wine", "cocktails", "drinks", "beer"),
    "ambience": ("atmosphere", "decor", "music", "lighting"),
    "location": ("location", "view", "terrace"),
}

EXPLICIT_TEMPLATES = {
    "positive": (
        "The {term} was excellent.",
        "We loved the {term}.",
        "The {term} really stood out.",
        "Hard to fault the {term}.",
    ),
    "negative": (
        "The {term} was disappointing.",
        "The {term} let the evening down.",
        "We would skip the {term} next time.",
    ),
    "neutral": (
        "The {term} was acceptable without being memorable.",
        "The {term} was fine, nothing more.",
    ),
}

IMPLICIT_TEMPLATES = {
    "positive": (
        "A wonderful place all around.",
        "We will definitely be back.",
        "Everything about the visit worked.",
        "Booking again was an easy decision.",
    ),
    "negative": (
        "We left wishing we had gone elsewhere.",
        "Not an experience we want to repeat.",
    ),
    "neutral": (
        "An unremarkable visit overall.",
        "Neither a hit nor a miss for us.",
    ),
}

FILLER_SENTENCES = (
    "We arrived early on a quiet weekday.",
    "The room filled up quickly after eight.",
    "Parking nearby took a little while.",
    "We were seated without much of a wait.",
)

TITLES = (
    "Dinner out.",
    "An evening to remember.",
    "Back again soon.",
    "Our honest verdict.",
    "Worth knowing before you book.",
    "Notes from our table.",
    "A full review.",
    "Second visit this year.",
)


def cell_step(value: Fraction) -> int:
    """Smallest opinion total t for which tau*(p-n)/t can equal the value."""
    for t in range(1, 200):
        if (value * t / TAU).denominator == 1:
            return t
    raise AssertionError(f"no feasible opinion total for value {value}")


def realize_cell(value: Fraction, total: int) -> tuple[int, int, int]:
    """Split a cell total into (positive, negative, neutral) matching the value."""
    diff = value * total / TAU
    assert diff.denominator == 1, (value, total)
    diff = int(diff)
    pos, neg = max(diff, 0), max(-diff, 0)
    neutral = total - pos - neg
    assert neutral >= 0
    swap = neutral // 3  # turn some neutral slack into offsetting pos/neg pairs
    return pos + swap, neg + swap, neutral - 2 * swap


def solve_counts(
    cells: dict[tuple[str, str, str], Fraction],
    fixed_totals: dict[tuple[str, str, str], int],
    optional: dict[str, list[tuple[str, str, Fraction]]],
    targets: dict[str, int],
) -> dict[tuple[str, str, str], int]:
    """Choose a total per cell so each criterion hits its target opinion count."""
    totals: dict[tuple[str, str, str], int] = dict(fixed_totals)
    for criterion in CRITERIA:
        crit_cells = sorted(
            key for key in cells if key[2] == criterion and key not in fixed_totals
        )
        for key in crit_cells:
            totals[key] = cell_step(cells[key])
        used = sum(totals[key] for key in totals if key[2] == criterion)
        deficit = targets[criterion] - used
        assert deficit >= 0, (criterion, deficit)
        for expert, alt, value in optional.get(criterion, []):
            step = cell_step(value)
            if deficit >= step:
                key = (expert, alt, criterion)
                assert key not in cells
                cells[key] = value
                totals[key] = step
                deficit -= step
        flexible = sorted(
            key
            for key in totals
            if key[2] == criterion
            and key not in fixed_totals
            and cell_step(cells[key]) == 1
        )
        assert flexible or deficit == 0, criterion
        index = 0
        while deficit > 0:
            totals[flexible[index % len(flexible)]] += 1
            index += 1
            deficit -= 1
    return totals


def build_opinions(
    cells: dict[tuple[str, str, str], Fraction],
    totals: dict[tuple[str, str, str], int],
) -> dict[tuple[str, str], list[tuple[str, str, str | None]]]:
    """Per review: ordered (criterion, polarity, aspect_term) triples."""
    per_review: dict[tuple[str, str], list[tuple[str, str, str | None]]] = {
        (e, x): [] for e in EXPERTS for x in ALTERNATIVES
    }
    term_cursor: dict[tuple[str, str, str], int] = {}
    for key in sorted(totals, key=lambda k: (k[0], k[1], CRITERIA.index(k[2]))):
        expert, alt, criterion = key
        pos, neg, neutral = realize_cell(cells[key], totals[key])
        terms = ASPECT_TERMS[criterion]

        def next_term() -> str | None:
            if not terms:
                return None
            cursor = term_cursor.get(key, 0)
            term_cursor[key] = cursor + 1
            return terms[cursor % len(terms)]

        for _ in range(pos):
            per_review[(expert, alt)].append((criterion, "positive", next_term()))
        for _ in range(neg):
            per_review[(expert, alt)].append((criterion, "negative", next_term()))
        for _ in range(neutral):
            per_review[(expert, alt)].append((criterion, "neutral", next_term()))
    return per_review


def sentence_for(term: str | None, polarity: str, slot: int) -> str:
    pool = IMPLICIT_TEMPLATES[polarity] if term is None else EXPLICIT_TEMPLATES[polarity]
    template = pool[slot % len(pool)]
    return template.format(term=term)


def main() -> None:
    scale = Scale(TAU)

    def grids_to_matrices(grids: dict) -> dict[str, EvalMatrix]:
        return {
            expert: EvalMatrix.from_grid(ALTERNATIVES, CRITERIA, TAU, grid)
            for expert, grid in grids.items()
        }

    # Cell targets as fractions. Display-rounded transcriptions are replaced
    # by the exact rationals the opinion counts force (1.56 -> 14/9).
    exact = {1.56: F(14, 9), 0.4: F(2, 5), 1.5: F(3, 2), 0.67: F(2, 3)}

    def extracted_cells() -> dict[tuple[str, str, str], Fraction]:
        cells = {}
        for expert, grid in ITE_EXTRACTED.items():
            for row_index, alt in enumerate(ALTERNATIVES):
                for col_index, criterion in enumerate(CRITERIA):
                    raw = grid[row_index][col_index]
                    if raw is NA:
                        continue
                    cells[(expert, alt, criterion)] = exact.get(raw, F(raw))
        return cells

    def gold_cells() -> dict[tuple[str, str, str], Fraction]:
        cells = {}
        for expert, grid in GOLD_ITE.items():
            for row_index, alt in enumerate(ALTERNATIVES):
                for col_index, criterion in enumerate(CRITERIA):
                    raw = grid[row_index][col_index]
                    if raw is NA or raw == "FIX":
                        continue
                    cells[(expert, alt, criterion)] = raw
        return cells

    fixed_totals = {
        ("e1", "x4", "restaurant"): 2,
        ("e1", "x4", "food"): 1,
        ("e1", "x4", "ambience"): 1,
    }
    fixed_cells = {
        ("e1", "x4", "restaurant"): F(2),
        ("e1", "x4", "food"): F(2),
        ("e1", "x4", "ambience"): F(2),
    }

    gold = gold_cells() | dict(fixed_cells)
    gold_totals = solve_counts(
        gold, fixed_totals, {c: list(v) for c, v in GOLD_OPTIONAL.items()}, GOLD_OPINION_COUNTS
    )
    extracted = extracted_cells() | dict(fixed_cells)
    extracted_totals = solve_counts(
        extracted, fixed_totals, {}, EXTRACTED_OPINION_COUNTS
    )

    gold_plan = build_opinions(gold, gold_totals)
    extracted_plan = build_opinions(extracted, extracted_totals)
    gold_plan[FIXED_REVIEW] = None  # handled verbatim below
    extracted_plan[FIXED_REVIEW] = None

    # --- Reviews -------------------------------------------------------------
    ine_matrices = grids_to_matrices(INE)
    reviews = []
    gold_opinions: list[Opinion] = []
    extracted_opinions: list[Opinion] = []
    title_cursor = 0
    filler_cursor = 0

    for expert in EXPERTS:
        for alt in ALTERNATIVES:
            ratings = {}
            for criterion in CRITERIA:
                value = ine_matrices[expert].get(alt, criterion)
                if value is not None:
                    ratings[criterion] = int(value) + TAU + 1

            if (expert, alt) == FIXED_REVIEW:
                body = " ".join(FIXED_BODY_SENTENCES)
                reviews.append(
                    Review(expert, alt, FIXED_TITLE, body, ratings)
                )
                for sentence_index, term, criterion, polarity in FIXED_OPINIONS:
                    opinion = Opinion(
                        expert, alt, sentence_index, term, criterion, Polarity(polarity)
                    )
                    gold_opinions.append(opinion)
                    extracted_opinions.append(opinion)
                continue

            gold_items = gold_plan[(expert, alt)]
            extracted_items = extracted_plan[(expert, alt)]
            body_count = max(len(gold_items), len(extracted_items), 1)
            sentences = []
            for slot in range(body_count):
                if slot < len(gold_items):
                    criterion, polarity, term = gold_items[slot]
                    sentences.append(sentence_for(term, polarity, slot))
                elif slot < len(extracted_items):
                    criterion, polarity, term = extracted_items[slot]
                    sentences.append(sentence_for(term, polarity, slot))
                else:
                    sentences.append(FILLER_SENTENCES[filler_cursor % len(FILLER_SENTENCES)])
                    filler_cursor += 1
            title = TITLES[title_cursor % len(TITLES)]
            title_cursor += 1
            review = Review(expert, alt, title, " ".join(sentences), ratings)
            assert review.sentence_count == body_count + 1, (expert, alt)
            reviews.append(review)

            for slot, (criterion, polarity, term) in enumerate(gold_items, start=1):
                gold_opinions.append(
                    Opinion(expert, alt, slot, term, criterion, Polarity(polarity))
                )
            for slot, (criterion, polarity, term) in enumerate(extracted_items, start=1):
                extracted_opinions.append(
                    Opinion(expert, alt, slot, term, criterion, Polarity(polarity))
                )

    dataset = build_dataset(
        EXPERTS, ALTERNATIVES, CRITERIA, TAU, reviews, gold_opinions
    )

    # --- Verification ----------------------------------------------------------
    built_ine = build_ine(dataset)
    for expert in EXPERTS:
        assert built_ine[expert] == ine_matrices[expert], expert

    gold_map = collect_opinions(dataset, GoldSource())
    gold_ite = build_ite(gold_map, EXPERTS, ALTERNATIVES, CRITERIA, scale)
    for (expert, alt, criterion), value in gold.items():
        got = gold_ite[expert].get(alt, criterion)
        assert got is not None and abs(got - float(value)) < 1e-12, (
            expert, alt, criterion, got, value,
        )
    for expert in EXPERTS:
        for alt in ALTERNATIVES:
            for criterion in CRITERIA:
                if (expert, alt, criterion) not in gold:
                    assert gold_ite[expert].get(alt, criterion) is None, (
                        expert, alt, criterion,
                    )

    gold_counts = count_evaluations(gold_map, None, CRITERIA)
    assert gold_counts == GOLD_OPINION_COUNTS, gold_counts
    combined_gold = count_evaluations(gold_map, built_ine, CRITERIA)
    weights = {c: combined_gold[c] / sum(combined_gold.values()) for c in CRITERIA}
    for criterion, expected in ANNOTATED_WEIGHTS.items():
        assert abs(round(weights[criterion], 3) - expected) < 1e-9, (
            criterion, weights[criterion], expected,
        )

    extracted_by_review: dict[tuple[str, str], list[Opinion]] = {
        review.key(): [] for review in reviews
    }
    for opinion in extracted_opinions:
        extracted_by_review[(opinion.expert, opinion.alternative)].append(opinion)
    extracted_ite = build_ite(
        extracted_by_review, EXPERTS, ALTERNATIVES, CRITERIA, scale
    )
    transcribed = grids_to_matrices(ITE_EXTRACTED)
    for expert in EXPERTS:
        for alt in ALTERNATIVES:
            for criterion in CRITERIA:
                want = transcribed[expert].get(alt, criterion)
                got = extracted_ite[expert].get(alt, criterion)
                assert (want is None) == (got is None), (expert, alt, criterion)
                if want is not None:
                    assert abs(want - got) < 5e-3, (expert, alt, criterion, want, got)
    extracted_counts = count_evaluations(extracted_by_review, None, CRITERIA)
    assert extracted_counts == EXTRACTED_OPINION_COUNTS, extracted_counts
    combined_counts = count_evaluations(extracted_by_review, built_ine, CRITERIA)
    assert combined_counts == COMBINED_TOTAL_COUNTS, combined_counts

    # --- Write everything ------------------------------------------------------
    fixtures = ROOT / "fixtures"
    for sub in ("corpus", "exchange", "counts", "config", "matrices"):
        (fixtures / sub).mkdir(parents=True, exist_ok=True)
    for sub in ("ite", "ine", "ip_combined", "ip_annotated"):
        (fixtures / "matrices" / sub).mkdir(parents=True, exist_ok=True)

    corpus = {
        "experts": list(EXPERTS),
        "alternatives": list(ALTERNATIVES),
        "criteria": list(CRITERIA),
        "tau": TAU,
        "reviews": [
            {
                "expert": review.expert,
                "alternative": review.alternative,
                "title": review.title,
                "body": review.body,
                "ratings": {
                    criterion: review.ratings.get(criterion)
                    for criterion in CRITERIA
                    if criterion in review.ratings
                },
            }
            for review in reviews
        ],
        "gold_opinions": [
            {
                "expert": op.expert,
                "alternative": op.alternative,
                "sentence_index": op.sentence_index,
                "aspect_term": op.aspect_term,
                "category": op.category,
                "polarity": op.polarity.value,
            }
            for op in gold_opinions
        ],
    }
    (fixtures / "corpus" / "restaurants.json").write_text(
        json.dumps(corpus, indent=2) + "\n", encoding="utf-8"
    )

    write_exchange(extracted_opinions, fixtures / "exchange" / "extracted.jsonl")

    for name, grids in (
        ("ite", ITE_EXTRACTED),
        ("ine", INE),
        ("ip_combined", IP_COMBINED),
        ("ip_annotated", IP_ANNOTATED),
    ):
        for expert, matrix in grids_to_matrices(grids).items():
            write_matrix_fixture(matrix, fixtures / "matrices" / name / f"{expert}.csv")
    for name, grid in (
        ("cp_combined", CP_COMBINED),
        ("cp_annotated", CP_ANNOTATED),
        ("cp_numeric_only", CP_NUMERIC_ONLY),
        ("cp_text_only", CP_TEXT_ONLY),
    ):
        matrix = EvalMatrix.from_grid(ALTERNATIVES, CRITERIA, TAU, grid)
        write_matrix_fixture(matrix, fixtures / "matrices" / f"{name}.csv")

    write_counts_fixture(
        EXTRACTED_OPINION_COUNTS, fixtures / "counts" / "extracted_opinions.csv"
    )
    write_counts_fixture(
        COMBINED_TOTAL_COUNTS, fixtures / "counts" / "combined_totals.csv"
    )

    config = {
        "tau": TAU,
        "criteria": list(CRITERIA),
        "omega_ite": 0.5,
        "omega_ine": 0.5,
        "weight_mode": "attention",
        "annotated_weights": ANNOTATED_WEIGHTS,
        "category_mapping": None,
    }
    (fixtures / "config" / "case_study.json").write_text(
        json.dumps(config, indent=2) + "\n", encoding="utf-8"
    )

    print(f"gold opinions: {len(gold_opinions)}")
    print(f"extracted opinions: {len(extracted_opinions)}")
    print("fixtures written to", fixtures)


if __name__ == "__main__":
    main()
