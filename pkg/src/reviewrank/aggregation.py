"""The numeric pipeline: opinion distillation, aggregation, weighting, ranking.

Stages, in order:

1. ``compute_ite`` turns one review's opinions into one matrix row:
   value = tau * (#positive - #negative) / #total per criterion, NA when the
   criterion received no opinions. Neutral opinions count only in the total.
2. ``individual_aggregate`` combines a textual and a numerical matrix cell-wise
   as ``w_text * text + w_num * num``. When exactly one operand (with positive
   weight) is present it gets the full weight; a zero-weight operand is
   treated as absent outright.
3. ``collective_aggregate`` averages the experts' matrices cell-wise, skipping
   NA cells; a cell nobody evaluated stays NA.
4. ``attention_weights`` turns per-criterion evaluation counts into weights
   proportional to the counts.
5. ``exploit`` reduces the collective matrix to one preference per alternative
   as the weighted sum over criteria. NA cells contribute nothing and the
   remaining weights are NOT renormalized; an all-NA row yields NA.
6. ``rank`` orders alternatives by preference, breaking ties by id and
   flagging them, with no-preference alternatives listed last.

All values live in [-tau, tau] throughout; with convex weights every stage
preserves that range.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

from .errors import UsageError, ValidationError
from .model import EvalMatrix, Opinion, Polarity, PreferenceVector, Scale

TIE_EPS = 1e-9


@dataclass(frozen=True)
class AggregationConfig:
    """Weights for the individual-aggregation step and the criteria weighting mode.

    ``weight_mode`` is either the string "attention" (weights from evaluation
    counts) or a mapping of explicit per-criterion weights that must be
    non-negative and sum to 1. ``na_policy`` documents the fixed missing-value
    contract and rejects anything else: NA cells are skipped, never
    renormalized over.
    """

    omega_ite: float = 0.5
    omega_ine: float = 0.5
    weight_mode: Union[str, Mapping[str, float]] = "attention"
    na_policy: str = "skip-without-renormalization"

    def __post_init__(self) -> None:
        if self.na_policy != "skip-without-renormalization":
            raise ValidationError(
                f"na_policy is fixed to 'skip-without-renormalization', "
                f"got {self.na_policy!r}"
            )
        if not 0.0 <= self.omega_ite <= 1.0 or not 0.0 <= self.omega_ine <= 1.0:
            raise ValidationError("omega_ite and omega_ine must lie in [0, 1]")
        if abs(self.omega_ite + self.omega_ine - 1.0) > 1e-12:
            raise ValidationError(
                f"omega_ite + omega_ine must be 1, got "
                f"{self.omega_ite} + {self.omega_ine}"
            )
        if isinstance(self.weight_mode, str):
            if self.weight_mode != "attention":
                raise ValidationError(
                    f"unknown weight mode {self.weight_mode!r}"
                )
        else:
            weights = dict(self.weight_mode)
            if any(w < 0 for w in weights.values()):
                raise ValidationError("explicit weights must be non-negative")
            total = sum(weights.values())
            if abs(total - 1.0) > 1e-9:
                raise ValidationError(f"explicit weights sum to {total}, expected 1")
            object.__setattr__(self, "weight_mode", weights)

    @property
    def explicit_weights(self) -> Optional[dict[str, float]]:
        if isinstance(self.weight_mode, str):
            return None
        return dict(self.weight_mode)


def compute_ite(
    opinions: Sequence[Opinion],
    criterion_ids: Sequence[str],
    scale: Scale,
) -> dict[str, Optional[float]]:
    """One matrix row from the opinions of a single review.

    Opinions must all belong to one (expert, alternative); an empty list gives
    an all-NA row.
    """
    keys = {(op.expert, op.alternative) for op in opinions}
    if len(keys) > 1:
        raise UsageError(f"opinions span several reviews: {sorted(keys)}")
    positives = {crit: 0 for crit in criterion_ids}
    negatives = {crit: 0 for crit in criterion_ids}
    totals = {crit: 0 for crit in criterion_ids}
    for opinion in opinions:
        if opinion.category not in totals:
            raise UsageError(f"opinion category {opinion.category!r} not in criteria")
        totals[opinion.category] += 1
        if opinion.polarity is Polarity.POSITIVE:
            positives[opinion.category] += 1
        elif opinion.polarity is Polarity.NEGATIVE:
            negatives[opinion.category] += 1
    row: dict[str, Optional[float]] = {}
    for crit in criterion_ids:
        if totals[crit] == 0:
            row[crit] = None
        else:
            row[crit] = scale.tau * (positives[crit] - negatives[crit]) / totals[crit]
    return row


def build_ite(
    opinions_by_review: Mapping[tuple[str, str], Sequence[Opinion]],
    experts: Sequence[str],
    alternatives: Sequence[str],
    criterion_ids: Sequence[str],
    scale: Scale,
) -> dict[str, EvalMatrix]:
    """Assemble one textual-evaluation matrix per expert from grouped opinions."""
    matrices = {}
    for expert in experts:
        cells: dict[tuple[str, str], float] = {}
        for alt in alternatives:
            row = compute_ite(
                opinions_by_review.get((expert, alt), ()), criterion_ids, scale
            )
            for crit, value in row.items():
                if value is not None:
                    cells[(alt, crit)] = value
        matrices[expert] = EvalMatrix(alternatives, criterion_ids, scale.tau, cells)
    return matrices


def individual_aggregate(
    ite: Optional[EvalMatrix],
    ine: Optional[EvalMatrix],
    config: AggregationConfig,
) -> EvalMatrix:
    """Cell-wise convex combination of one expert's textual and numerical matrices.

    A missing matrix, a zero-weight matrix, and an NA cell are all "absent";
    whichever operand remains takes the full weight, and a cell absent on both
    sides stays NA.
    """
    use_ite = ite is not None and config.omega_ite > 0.0
    use_ine = ine is not None and config.omega_ine > 0.0
    if not use_ite and not use_ine:
        raise UsageError("individual aggregation needs at least one effective operand")
    reference = ite if use_ite else ine
    if use_ite and use_ine:
        if ite.rows != ine.rows or ite.cols != ine.cols or ite.tau != ine.tau:
            raise UsageError("textual and numerical matrices must share labels")
    cells: dict[tuple[str, str], float] = {}
    for row in reference.rows:
        for col in reference.cols:
            t = ite.get(row, col) if use_ite else None
            n = ine.get(row, col) if use_ine else None
            if t is not None and n is not None:
                cells[(row, col)] = config.omega_ite * t + config.omega_ine * n
            elif t is not None:
                cells[(row, col)] = t
            elif n is not None:
                cells[(row, col)] = n
    return EvalMatrix(reference.rows, reference.cols, reference.tau, cells)


def collective_aggregate(ips: Mapping[str, EvalMatrix]) -> EvalMatrix:
    """Average the experts' matrices cell-wise over the present values."""
    if not ips:
        raise UsageError("collective aggregation needs at least one expert")
    matrices = list(ips.values())
    first = matrices[0]
    for matrix in matrices[1:]:
        if (
            matrix.rows != first.rows
            or matrix.cols != first.cols
            or matrix.tau != first.tau
        ):
            raise UsageError("expert matrices must share labels and scale")
    cells: dict[tuple[str, str], float] = {}
    for row in first.rows:
        for col in first.cols:
            present = sorted(
                v for v in (m.get(row, col) for m in matrices) if v is not None
            )
            if present:
                # summing in sorted order makes the mean independent of the
                # expert map's iteration order, ulp for ulp
                cells[(row, col)] = sum(present) / len(present)
    return EvalMatrix(first.rows, first.cols, first.tau, cells)


def attention_weights(counts: Mapping[str, int]) -> dict[str, float]:
    """Weights proportional to per-criterion evaluation counts.

    Zero-count criteria get weight 0; all-zero counts are rejected.
    """
    if any(c < 0 for c in counts.values()):
        raise UsageError("evaluation counts must be non-negative")
    total = sum(counts.values())
    if total == 0:
        raise UsageError("all evaluation counts are zero; weights are undefined")
    return {crit: count / total for crit, count in counts.items()}


def exploit(cp: EvalMatrix, weights: Mapping[str, float]) -> PreferenceVector:
    """Weighted sum of each row of the collective matrix.

    NA cells contribute zero without renormalizing the remaining weights, so
    an alternative is judged only on the criteria it was evaluated on, at
    their global importance. A row with no present weighted cell yields NA.
    """
    for crit in weights:
        if crit not in cp.cols:
            raise UsageError(f"weight given for unknown criterion {crit!r}")
    total = sum(weights.values())
    if abs(total - 1.0) > 1e-9:
        raise UsageError(f"weights sum to {total}, expected 1")
    values: dict[str, Optional[float]] = {}
    for row in cp.rows:
        acc = 0.0
        any_present = False
        for crit, weight in weights.items():
            value = cp.get(row, crit)
            if value is None:
                continue
            acc += weight * value
            any_present = True
        values[row] = acc if any_present else None
    return PreferenceVector(cp.rows, cp.tau, values)


@dataclass(frozen=True)
class Intermediates:
    """Per-expert stage matrices plus the collective matrix, for reporting."""

    ite: Optional[Mapping[str, EvalMatrix]] = None
    ine: Optional[Mapping[str, EvalMatrix]] = None
    ip: Optional[Mapping[str, EvalMatrix]] = None
    cp: Optional[EvalMatrix] = None


@dataclass(frozen=True)
class RankedResult:
    """Preference vector plus the derived ordering.

    ``order`` lists every alternative, best first; alternatives without a
    preference value come last and are repeated in ``no_preference``. Groups
    of alternatives whose preferences coincide (within 1e-9) appear in
    ``ties`` in ranking order.
    """

    fp: PreferenceVector
    order: tuple[str, ...]
    ties: tuple[tuple[str, ...], ...]
    no_preference: tuple[str, ...]
    weights: Optional[Mapping[str, float]] = None
    intermediates: Optional[Intermediates] = None


def rank(
    fp: PreferenceVector,
    weights: Optional[Mapping[str, float]] = None,
    intermediates: Optional[Intermediates] = None,
) -> RankedResult:
    """Order alternatives by descending preference.

    Exact rank ties are broken by alternative id so the result is
    deterministic, and each tied group is reported rather than hidden.
    """
    present = [(alt, fp.get(alt)) for alt in fp.alternatives if fp.get(alt) is not None]
    if not present:
        raise UsageError("preference vector has no present entries to rank")
    ordered = sorted(present, key=lambda pair: (-pair[1], pair[0]))
    ties: list[tuple[str, ...]] = []
    group = [ordered[0]]
    for alt, value in ordered[1:]:
        if abs(value - group[-1][1]) <= TIE_EPS:
            group.append((alt, value))
        else:
            if len(group) > 1:
                ties.append(tuple(a for a, _ in group))
            group = [(alt, value)]
    if len(group) > 1:
        ties.append(tuple(a for a, _ in group))
    missing = tuple(alt for alt in fp.alternatives if fp.get(alt) is None)
    order = tuple(alt for alt, _ in ordered) + missing
    return RankedResult(
        fp=fp,
        order=order,
        ties=tuple(ties),
        no_preference=missing,
        weights=dict(weights) if weights is not None else None,
        intermediates=intermediates,
    )
