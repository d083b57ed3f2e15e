"""Scenario orchestration: wire ingestion, opinion sources, and aggregation.

Four scenario kinds exist:

* ``combined``     — extracted opinions plus numerical ratings (the full pipeline)
* ``annotated``    — gold opinions plus numerical ratings (upper bound)
* ``numeric_only`` — numerical ratings alone; the rating matrices double as the
  individual preferences and only ratings feed the criteria weights
* ``text_only``    — opinions alone; the textual matrices double as the
  individual preferences and only opinions feed the criteria weights

Each scenario can run from a corpus (reviews plus an opinion source) or from
matrix fixtures (pre-computed per-expert matrices plus an opinion-count file),
so reference matrices are directly executable.

All numbers in a report are fixed to 6 significant digits, which makes JSON
emission byte-deterministic and lossless to re-parse.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

from .aggregation import (
    AggregationConfig,
    Intermediates,
    RankedResult,
    attention_weights,
    build_ite,
    collective_aggregate,
    exploit,
    individual_aggregate,
    rank,
)
from .errors import EngineError, UsageError, ValidationError
from .ingestion import Dataset, build_ine
from .model import EvalMatrix, PreferenceVector
from .sources import GoldSource, OpinionSource, collect_opinions, count_evaluations

SCENARIO_KINDS = ("combined", "annotated", "numeric_only", "text_only")

#: Human-readable row labels used by the batch table, one per scenario kind.
SCENARIO_LABELS = {
    "annotated": "Annotated evaluations",
    "numeric_only": "Only numerical eval.",
    "text_only": "Only text eval.",
    "combined": "num.+text",
}

#: Row order of the four-scenario batch table.
BATCH_ORDER = ("annotated", "numeric_only", "text_only", "combined")

REPORT_FORMATS = ("json", "csv", "md")


def _round6(value: float) -> float:
    return float(f"{value:.6g}")


@dataclass(frozen=True)
class ScenarioSpec:
    """What to run: scenario kind, aggregation config, corpus opinion source."""

    kind: str
    config: AggregationConfig = field(default_factory=AggregationConfig)
    opinion_source: Optional[OpinionSource] = None

    def __post_init__(self) -> None:
        if self.kind not in SCENARIO_KINDS:
            raise UsageError(
                f"unknown scenario {self.kind!r}; expected one of {SCENARIO_KINDS}"
            )
        if self.kind == "numeric_only" and self.opinion_source is not None:
            raise UsageError("numeric_only scenario does not take an opinion source")


@dataclass(frozen=True)
class CorpusInputs:
    """Run from a validated corpus."""

    dataset: Dataset
    provenance: Mapping[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class FixtureInputs:
    """Run from pre-computed per-expert matrices and an opinion-count table."""

    tau: int
    criteria: tuple[str, ...]
    alternatives: tuple[str, ...]
    ite: Optional[Mapping[str, EvalMatrix]] = None
    ine: Optional[Mapping[str, EvalMatrix]] = None
    ip: Optional[Mapping[str, EvalMatrix]] = None
    opinion_counts: Optional[Mapping[str, int]] = None
    provenance: Mapping[str, str] = field(default_factory=dict)


ScenarioInputs = Union[CorpusInputs, FixtureInputs]


@dataclass(frozen=True)
class ScenarioReport:
    """Everything one scenario run produced, ready to serialize."""

    kind: str
    tau: int
    alternatives: tuple[str, ...]
    criteria: tuple[str, ...]
    weights: Mapping[str, float]
    fp: Mapping[str, Optional[float]]
    order: tuple[str, ...]
    ties: tuple[tuple[str, ...], ...]
    no_preference: tuple[str, ...]
    intermediates: Optional[Intermediates] = None
    provenance: Mapping[str, Mapping] = field(default_factory=dict)

    @property
    def label(self) -> str:
        return SCENARIO_LABELS[self.kind]

    def ranking_text(self) -> str:
        """Ordering as "x2 > x1 = x3 > x4"; no-preference entries marked NA."""
        tie_mates: dict[str, tuple[str, ...]] = {}
        for group in self.ties:
            for alt in group:
                tie_mates[alt] = group
        parts: list[str] = []
        prev: Optional[str] = None
        for alt in self.order:
            label = f"{alt} (NA)" if alt in self.no_preference else alt
            if (
                prev is not None
                and prev in tie_mates
                and tie_mates.get(alt) is tie_mates[prev]
            ):
                parts[-1] = f"{parts[-1]} = {label}"
            else:
                parts.append(label)
            prev = alt
        return " > ".join(parts)


class _Stage:
    """Re-raise engine errors with the pipeline stage prepended."""

    def __init__(self, name: str) -> None:
        self.name = name

    def __enter__(self) -> "_Stage":
        return self

    def __exit__(self, exc_type, exc, tb) -> bool:
        if exc is not None and isinstance(exc, EngineError) and not getattr(
            exc, "_staged", False
        ):
            staged = type(exc)(f"[{self.name}] {exc}")
            staged._staged = True
            raise staged from exc
        return False


def _matrix_round6(matrix: EvalMatrix) -> EvalMatrix:
    cells = {key: _round6(value) for key, value in matrix.items()}
    return EvalMatrix(matrix.rows, matrix.cols, matrix.tau, cells)


def _finalize(
    kind: str,
    tau: int,
    alternatives: Sequence[str],
    criteria: Sequence[str],
    weights: Mapping[str, float],
    fp: PreferenceVector,
    intermediates: Intermediates,
    provenance: Mapping,
    config: AggregationConfig,
) -> ScenarioReport:
    with _Stage("rank"):
        ranked: RankedResult = rank(fp)
    rounded_weights = {crit: _round6(weights.get(crit, 0.0)) for crit in criteria}
    rounded_fp = {
        alt: (None if fp.get(alt) is None else _round6(fp.get(alt)))
        for alt in alternatives
    }
    rounded_intermediates = Intermediates(
        ite={e: _matrix_round6(m) for e, m in intermediates.ite.items()}
        if intermediates.ite is not None
        else None,
        ine={e: _matrix_round6(m) for e, m in intermediates.ine.items()}
        if intermediates.ine is not None
        else None,
        ip={e: _matrix_round6(m) for e, m in intermediates.ip.items()}
        if intermediates.ip is not None
        else None,
        cp=_matrix_round6(intermediates.cp) if intermediates.cp is not None else None,
    )
    mode = config.weight_mode
    provenance_out = {
        "inputs": dict(provenance),
        "config": {
            "tau": tau,
            "omega_ite": _round6(config.omega_ite),
            "omega_ine": _round6(config.omega_ine),
            "weight_mode": "explicit" if isinstance(mode, Mapping) else mode,
        },
    }
    return ScenarioReport(
        kind=kind,
        tau=tau,
        alternatives=tuple(alternatives),
        criteria=tuple(criteria),
        weights=rounded_weights,
        fp=rounded_fp,
        order=ranked.order,
        ties=ranked.ties,
        no_preference=ranked.no_preference,
        intermediates=rounded_intermediates,
        provenance=provenance_out,
    )


def _weights_for(
    config: AggregationConfig, counts: Optional[Mapping[str, int]], kind: str
) -> dict[str, float]:
    explicit = config.explicit_weights
    if explicit is not None:
        return explicit
    if counts is None:
        raise UsageError(
            f"{kind} scenario needs evaluation counts for attention weighting "
            "(or explicit weights in the config)"
        )
    return attention_weights(counts)


def _run_from_corpus(spec: ScenarioSpec, inputs: CorpusInputs) -> ScenarioReport:
    dataset = inputs.dataset
    criteria = dataset.criterion_ids
    scale = dataset.scale
    kind = spec.kind

    ine = None
    if kind != "text_only":
        with _Stage("ingest-ratings"):
            ine = build_ine(dataset)

    opinions = None
    ite = None
    if kind != "numeric_only":
        source = spec.opinion_source
        if source is None:
            if kind in ("annotated",):
                source = GoldSource()
            else:
                raise UsageError(
                    f"{kind} scenario on a corpus needs an opinion source "
                    "(gold annotations or an exchange file)"
                )
        with _Stage("collect-opinions"):
            opinions = collect_opinions(dataset, source)
        with _Stage("distill"):
            ite = build_ite(
                opinions, dataset.experts, dataset.alternatives, criteria, scale
            )

    with _Stage("individual-aggregate"):
        if kind in ("combined", "annotated"):
            ip = {
                expert: individual_aggregate(ite[expert], ine[expert], spec.config)
                for expert in dataset.experts
            }
        elif kind == "numeric_only":
            ip = dict(ine)
        else:
            ip = dict(ite)

    with _Stage("collective-aggregate"):
        cp = collective_aggregate(ip)

    with _Stage("criteria-weighting"):
        if kind in ("combined", "annotated"):
            counts = count_evaluations(opinions, ine, criteria)
        elif kind == "numeric_only":
            counts = count_evaluations(None, ine, criteria)
        else:
            counts = count_evaluations(opinions, None, criteria)
        weights = _weights_for(spec.config, counts, kind)

    with _Stage("exploit"):
        fp = exploit(cp, weights)

    return _finalize(
        kind,
        scale.tau,
        dataset.alternatives,
        criteria,
        weights,
        fp,
        Intermediates(ite=ite, ine=ine, ip=ip, cp=cp),
        inputs.provenance,
        spec.config,
    )


def _check_fixture_matrices(
    matrices: Mapping[str, EvalMatrix], inputs: FixtureInputs, what: str
) -> None:
    for expert, matrix in matrices.items():
        if matrix.cols != inputs.criteria or matrix.rows != inputs.alternatives:
            raise ValidationError(
                f"{what} matrix for {expert!r} has labels "
                f"{matrix.rows}/{matrix.cols}, expected "
                f"{inputs.alternatives}/{inputs.criteria}"
            )


def _run_from_fixtures(spec: ScenarioSpec, inputs: FixtureInputs) -> ScenarioReport:
    kind = spec.kind
    criteria = inputs.criteria
    if kind == "text_only" and inputs.ine is not None:
        raise UsageError("text_only scenario must not be given numerical matrices")

    for name, matrices in (("textual", inputs.ite), ("numerical", inputs.ine), ("preference", inputs.ip)):
        if matrices is not None:
            _check_fixture_matrices(matrices, inputs, name)

    with _Stage("individual-aggregate"):
        if kind == "combined":
            if inputs.ite is None or inputs.ine is None:
                raise UsageError(
                    "combined scenario from fixtures needs textual and numerical matrices"
                )
            experts = sorted(set(inputs.ite) | set(inputs.ine))
            ip = {
                expert: individual_aggregate(
                    inputs.ite.get(expert), inputs.ine.get(expert), spec.config
                )
                for expert in experts
            }
        elif kind == "annotated":
            if inputs.ip is None:
                raise UsageError(
                    "annotated scenario from fixtures needs individual preference matrices"
                )
            ip = dict(inputs.ip)
        elif kind == "numeric_only":
            if inputs.ine is None:
                raise UsageError("numeric_only scenario from fixtures needs numerical matrices")
            ip = dict(inputs.ine)
        else:
            if inputs.ite is None:
                raise UsageError("text_only scenario from fixtures needs textual matrices")
            ip = dict(inputs.ite)

    with _Stage("collective-aggregate"):
        cp = collective_aggregate(ip)

    with _Stage("criteria-weighting"):
        counts: Optional[dict[str, int]] = None
        if kind == "combined":
            if inputs.opinion_counts is not None:
                counts = count_evaluations(None, inputs.ine, criteria)
                for crit, extra in inputs.opinion_counts.items():
                    if crit not in counts:
                        raise ValidationError(f"counts fixture names unknown criterion {crit!r}")
                    counts[crit] += extra
        elif kind == "numeric_only":
            counts = count_evaluations(None, inputs.ine, criteria)
        elif kind == "text_only":
            if inputs.opinion_counts is not None:
                counts = {crit: 0 for crit in criteria}
                for crit, extra in inputs.opinion_counts.items():
                    if crit not in counts:
                        raise ValidationError(f"counts fixture names unknown criterion {crit!r}")
                    counts[crit] += extra
        weights = _weights_for(spec.config, counts, kind)

    with _Stage("exploit"):
        fp = exploit(cp, weights)

    intermediates = Intermediates(
        ite=dict(inputs.ite) if inputs.ite is not None else None,
        ine=dict(inputs.ine) if inputs.ine is not None else None,
        ip=ip,
        cp=cp,
    )
    return _finalize(
        kind,
        inputs.tau,
        inputs.alternatives,
        criteria,
        weights,
        fp,
        intermediates,
        inputs.provenance,
        spec.config,
    )


def run_scenario(spec: ScenarioSpec, inputs: ScenarioInputs) -> ScenarioReport:
    """Run one scenario end to end and return its report."""
    if isinstance(inputs, CorpusInputs):
        return _run_from_corpus(spec, inputs)
    if isinstance(inputs, FixtureInputs):
        return _run_from_fixtures(spec, inputs)
    raise UsageError(f"unknown inputs {inputs!r}")


# ---------------------------------------------------------------------------
# Serialization


def _matrix_to_dict(matrix: EvalMatrix) -> dict:
    return {
        "rows": list(matrix.rows),
        "cols": list(matrix.cols),
        "cells": matrix.to_grid(),
    }


def _matrix_from_dict(raw: Mapping, tau: int) -> EvalMatrix:
    return EvalMatrix.from_grid(raw["rows"], raw["cols"], tau, raw["cells"])


def report_to_dict(report: ScenarioReport, summary: bool = False) -> dict:
    intermediates = None
    if report.intermediates is not None and not summary:
        inter = report.intermediates
        intermediates = {
            "ite": {e: _matrix_to_dict(m) for e, m in sorted(inter.ite.items())}
            if inter.ite is not None
            else None,
            "ine": {e: _matrix_to_dict(m) for e, m in sorted(inter.ine.items())}
            if inter.ine is not None
            else None,
            "ip": {e: _matrix_to_dict(m) for e, m in sorted(inter.ip.items())}
            if inter.ip is not None
            else None,
            "cp": _matrix_to_dict(inter.cp) if inter.cp is not None else None,
        }
    return {
        "scenario": report.kind,
        "label": report.label,
        "tau": report.tau,
        "alternatives": list(report.alternatives),
        "criteria": list(report.criteria),
        "weights": {crit: report.weights[crit] for crit in report.criteria},
        "fp": {alt: report.fp[alt] for alt in report.alternatives},
        "ranking": {
            "order": list(report.order),
            "ties": [list(group) for group in report.ties],
            "no_preference": list(report.no_preference),
            "text": report.ranking_text(),
        },
        "intermediates": intermediates,
        "provenance": {
            "inputs": dict(report.provenance.get("inputs", {})),
            "config": dict(report.provenance.get("config", {})),
        },
    }


def report_from_dict(raw: Mapping) -> ScenarioReport:
    tau = raw["tau"]
    intermediates = None
    if raw.get("intermediates") is not None:
        inter = raw["intermediates"]

        def load_map(key: str) -> Optional[dict[str, EvalMatrix]]:
            if inter.get(key) is None:
                return None
            return {e: _matrix_from_dict(m, tau) for e, m in inter[key].items()}

        intermediates = Intermediates(
            ite=load_map("ite"),
            ine=load_map("ine"),
            ip=load_map("ip"),
            cp=_matrix_from_dict(inter["cp"], tau) if inter.get("cp") is not None else None,
        )
    return ScenarioReport(
        kind=raw["scenario"],
        tau=tau,
        alternatives=tuple(raw["alternatives"]),
        criteria=tuple(raw["criteria"]),
        weights=dict(raw["weights"]),
        fp=dict(raw["fp"]),
        order=tuple(raw["ranking"]["order"]),
        ties=tuple(tuple(group) for group in raw["ranking"]["ties"]),
        no_preference=tuple(raw["ranking"]["no_preference"]),
        intermediates=intermediates,
        provenance={
            "inputs": dict(raw["provenance"]["inputs"]),
            "config": dict(raw["provenance"]["config"]),
        },
    )


def _format_cell(value: Optional[float]) -> str:
    return "NA" if value is None else f"{value:.2f}"


def _markdown_table(reports: Sequence[ScenarioReport]) -> str:
    alternatives = reports[0].alternatives
    for report in reports[1:]:
        if report.alternatives != alternatives:
            raise UsageError("cannot tabulate reports over different alternatives")
    header = ["Scenario"] + list(alternatives) + ["Final Ranking"]
    lines = [
        "| " + " | ".join(header) + " |",
        "| " + " | ".join("---" for _ in header) + " |",
    ]
    for report in reports:
        row = (
            [report.label]
            + [_format_cell(report.fp[alt]) for alt in alternatives]
            + [report.ranking_text()]
        )
        lines.append("| " + " | ".join(row) + " |")
    return "\n".join(lines) + "\n"


def emit_report(
    report: Union[ScenarioReport, Sequence[ScenarioReport]],
    fmt: str,
    summary: bool = False,
) -> bytes:
    """Serialize one report (or a batch) as json, csv, or a markdown table."""
    reports = [report] if isinstance(report, ScenarioReport) else list(report)
    if not reports:
        raise UsageError("nothing to emit")
    if fmt == "json":
        payload = [report_to_dict(r, summary=summary) for r in reports]
        doc = payload[0] if isinstance(report, ScenarioReport) else payload
        return (json.dumps(doc, indent=2, allow_nan=False) + "\n").encode("utf-8")
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["scenario", "section", "key", "value"])
        for r in reports:
            for crit in r.criteria:
                writer.writerow([r.kind, "weight", crit, f"{r.weights[crit]:.6g}"])
            for alt in r.alternatives:
                value = r.fp[alt]
                writer.writerow(
                    [r.kind, "fp", alt, "NA" if value is None else f"{value:.6g}"]
                )
            for position, alt in enumerate(r.order, start=1):
                writer.writerow([r.kind, "rank", str(position), alt])
        return buffer.getvalue().encode("utf-8")
    if fmt == "md":
        return _markdown_table(reports).encode("utf-8")
    raise UsageError(f"unknown report format {fmt!r}; expected one of {REPORT_FORMATS}")


def sha256_file(path: Union[str, Path]) -> str:
    digest = hashlib.sha256()
    digest.update(Path(path).read_bytes())
    return digest.hexdigest()
