"""Command-line entry point.

Subcommands:

    validate <corpus> [--mode complete|lenient]
    run --scenario {combined,annotated,numeric_only,text_only,all}
        [--corpus F [--opinions F.jsonl]]
        [--ite-dir D] [--ine-dir D] [--ip-dir D] [--counts F]
        [--config F] [--format json|csv|md] [--out F] [--summary]
    weights --counts F [--ine-dir D]
    rank --fp F [--config F]

Exit codes: 0 success, 1 validation error, 2 usage error, 3 internal error.

The optional config file is JSON:

    {"tau": 2,
     "criteria": ["restaurant", "food", "service", "drinks", "ambience", "location"],
     "omega_ite": 0.5, "omega_ine": 0.5,
     "weight_mode": "attention",                  # or {"explicit": {crit: w}}
     "annotated_weights": {crit: w},              # optional, annotated runs only
     "category_mapping": {"FOOD#QUALITY": "food", ...}}   # optional

Every field defaults to the restaurant case-study setup shown above.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional, Sequence

from .aggregation import AggregationConfig, attention_weights, rank
from .errors import EngineError, UsageError, ValidationError
from .ingestion import (
    load_counts_fixture,
    load_dataset,
    load_matrix_fixture,
)
from .model import EvalMatrix, PreferenceVector, Scale
from .scenarios import (
    BATCH_ORDER,
    REPORT_FORMATS,
    SCENARIO_KINDS,
    CorpusInputs,
    FixtureInputs,
    ScenarioSpec,
    emit_report,
    run_scenario,
    sha256_file,
)
from .sources import ExternalSource, GoldSource, count_evaluations

DEFAULT_CRITERIA = ("restaurant", "food", "service", "drinks", "ambience", "location")


@dataclass(frozen=True)
class RunConfig:
    """Parsed config file with case-study defaults."""

    tau: int = 2
    criteria: tuple[str, ...] = DEFAULT_CRITERIA
    omega_ite: float = 0.5
    omega_ine: float = 0.5
    weight_mode: object = "attention"
    annotated_weights: Optional[Mapping[str, float]] = None
    category_mapping: Optional[Mapping[str, str]] = None

    def aggregation(self, kind: str) -> AggregationConfig:
        mode = self.weight_mode
        if kind == "annotated" and self.annotated_weights is not None:
            mode = dict(self.annotated_weights)
        return AggregationConfig(
            omega_ite=self.omega_ite, omega_ine=self.omega_ine, weight_mode=mode
        )


def load_config(path: Optional[str]) -> RunConfig:
    if path is None:
        return RunConfig()
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    weight_mode: object = raw.get("weight_mode", "attention")
    if isinstance(weight_mode, dict):
        if set(weight_mode) != {"explicit"}:
            raise UsageError(
                'weight_mode must be "attention" or {"explicit": {criterion: weight}}'
            )
        weight_mode = dict(weight_mode["explicit"])
    return RunConfig(
        tau=raw.get("tau", 2),
        criteria=tuple(raw.get("criteria", DEFAULT_CRITERIA)),
        omega_ite=raw.get("omega_ite", 0.5),
        omega_ine=raw.get("omega_ine", 0.5),
        weight_mode=weight_mode,
        annotated_weights=raw.get("annotated_weights"),
        category_mapping=raw.get("category_mapping"),
    )


def _load_matrix_dir(
    directory: str, criteria: Sequence[str], scale: Scale
) -> dict[str, EvalMatrix]:
    root = Path(directory)
    if not root.is_dir():
        raise UsageError(f"{directory!r} is not a directory")
    matrices = {}
    for csv_path in sorted(root.glob("*.csv")):
        matrices[csv_path.stem] = load_matrix_fixture(csv_path, criteria, scale)
    if not matrices:
        raise UsageError(f"no .csv matrices found in {directory!r}")
    return matrices


def _digest_paths(paths: Mapping[str, Optional[str]]) -> dict[str, str]:
    out = {}
    for name, path in sorted(paths.items()):
        if path is None:
            continue
        target = Path(path)
        if target.is_dir():
            for child in sorted(target.glob("*.csv")):
                out[f"{name}/{child.name}"] = sha256_file(child)
        else:
            out[name] = sha256_file(target)
    return out


def _build_spec(
    kind: str, config: RunConfig, args: argparse.Namespace, batch: bool = False
) -> ScenarioSpec:
    source = None
    if args.corpus is not None:
        if kind == "annotated":
            if args.opinions is not None and not batch:
                raise UsageError(
                    "annotated scenario uses the corpus gold annotations; "
                    "drop --opinions"
                )
            source = GoldSource()
        elif kind in ("combined", "text_only"):
            if args.opinions is None:
                raise UsageError(
                    f"{kind} scenario on a corpus needs --opinions F.jsonl"
                )
            source = ExternalSource(args.opinions, config.category_mapping)
        elif kind == "numeric_only" and args.opinions is not None and not batch:
            raise UsageError("numeric_only scenario does not take --opinions")
    return ScenarioSpec(kind=kind, config=config.aggregation(kind), opinion_source=source)


def _cmd_validate(args: argparse.Namespace) -> int:
    dataset = load_dataset(args.corpus, mode=args.mode)
    gold = len(dataset.gold_opinions) if dataset.gold_opinions is not None else 0
    print(
        f"OK: {len(dataset.experts)} experts x {len(dataset.alternatives)} "
        f"alternatives, {len(dataset.reviews)} reviews, "
        f"{len(dataset.criteria)} criteria, tau={dataset.scale.tau}, "
        f"{gold} gold opinions"
    )
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    kinds = list(BATCH_ORDER) if args.scenario == "all" else [args.scenario]

    corpus_mode = args.corpus is not None
    fixture_flags = (args.ite_dir, args.ine_dir, args.ip_dir, args.counts)
    if corpus_mode and any(flag is not None for flag in fixture_flags):
        raise UsageError("--corpus and matrix-fixture flags are mutually exclusive")
    if not corpus_mode and all(flag is None for flag in fixture_flags):
        raise UsageError("run needs either --corpus or matrix-fixture inputs")
    if args.scenario == "text_only" and args.ine_dir is not None:
        raise UsageError("text_only scenario must not be given --ine-dir")

    reports = []
    for kind in kinds:
        spec = _build_spec(kind, config, args, batch=args.scenario == "all")
        if corpus_mode:
            dataset = load_dataset(args.corpus, mode=args.mode)
            provenance = _digest_paths(
                {"corpus": args.corpus, "opinions": args.opinions, "config": args.config}
            )
            inputs: object = CorpusInputs(dataset=dataset, provenance=provenance)
        else:
            scale = Scale(config.tau)
            ite = ine = ip = None
            if args.ite_dir is not None and kind in ("combined", "text_only"):
                ite = _load_matrix_dir(args.ite_dir, config.criteria, scale)
            if args.ine_dir is not None and kind in ("combined", "numeric_only", "annotated"):
                ine = _load_matrix_dir(args.ine_dir, config.criteria, scale)
            if args.ip_dir is not None and kind == "annotated":
                ip = _load_matrix_dir(args.ip_dir, config.criteria, scale)
            counts = (
                load_counts_fixture(args.counts) if args.counts is not None else None
            )
            alternatives = None
            for matrices in (ite, ine, ip):
                if matrices:
                    alternatives = next(iter(matrices.values())).rows
                    break
            if alternatives is None:
                raise UsageError(f"{kind} scenario is missing its matrix fixtures")
            provenance = _digest_paths(
                {
                    "ite": args.ite_dir,
                    "ine": args.ine_dir,
                    "ip": args.ip_dir,
                    "counts": args.counts,
                    "config": args.config,
                }
            )
            inputs = FixtureInputs(
                tau=config.tau,
                criteria=tuple(config.criteria),
                alternatives=alternatives,
                ite=ite,
                ine=ine,
                ip=ip,
                opinion_counts=counts,
                provenance=provenance,
            )
        reports.append(run_scenario(spec, inputs))

    payload = reports[0] if args.scenario != "all" else reports
    blob = emit_report(payload, args.format, summary=args.summary)
    if args.out is not None:
        Path(args.out).write_bytes(blob)
    else:
        sys.stdout.write(blob.decode("utf-8"))
    return 0


def _cmd_weights(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    counts = load_counts_fixture(args.counts)
    if args.ine_dir is not None:
        ine = _load_matrix_dir(args.ine_dir, config.criteria, Scale(config.tau))
        rating_counts = count_evaluations(None, ine, config.criteria)
        for crit, extra in rating_counts.items():
            counts[crit] = counts.get(crit, 0) + extra
    weights = attention_weights(counts)
    print(json.dumps({crit: float(f"{w:.6g}") for crit, w in weights.items()}, indent=2))
    return 0


def _cmd_rank(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    raw = json.loads(Path(args.fp).read_text(encoding="utf-8"))
    if not isinstance(raw, dict) or not raw:
        raise UsageError("--fp file must be a non-empty JSON object {alternative: value}")
    fp = PreferenceVector(list(raw), config.tau, raw)
    result = rank(fp)
    print(
        json.dumps(
            {
                "order": list(result.order),
                "ties": [list(group) for group in result.ties],
                "no_preference": list(result.no_preference),
            },
            indent=2,
        )
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reviewrank",
        description="Rank alternatives from multi-expert review opinions and ratings",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="validate a corpus file")
    p_validate.add_argument("corpus")
    p_validate.add_argument("--mode", choices=("complete", "lenient"), default="complete")
    p_validate.set_defaults(func=_cmd_validate)

    p_run = sub.add_parser("run", help="run one scenario (or all four)")
    p_run.add_argument(
        "--scenario", required=True, choices=SCENARIO_KINDS + ("all",)
    )
    p_run.add_argument("--corpus")
    p_run.add_argument("--opinions", help="opinion-exchange JSONL for corpus runs")
    p_run.add_argument("--mode", choices=("complete", "lenient"), default="complete")
    p_run.add_argument("--ite-dir", help="directory of per-expert textual matrices")
    p_run.add_argument("--ine-dir", help="directory of per-expert numerical matrices")
    p_run.add_argument("--ip-dir", help="directory of per-expert preference matrices")
    p_run.add_argument("--counts", help="per-criterion opinion-count CSV")
    p_run.add_argument("--config")
    p_run.add_argument("--format", choices=REPORT_FORMATS, default="json")
    p_run.add_argument("--out")
    p_run.add_argument("--summary", action="store_true", help="omit intermediates")
    p_run.set_defaults(func=_cmd_run)

    p_weights = sub.add_parser("weights", help="criteria weights from counts")
    p_weights.add_argument("--counts", required=True)
    p_weights.add_argument("--ine-dir")
    p_weights.add_argument("--config")
    p_weights.set_defaults(func=_cmd_weights)

    p_rank = sub.add_parser("rank", help="rank a preference vector")
    p_rank.add_argument("--fp", required=True, help="JSON {alternative: value|null}")
    p_rank.add_argument("--config")
    p_rank.set_defaults(func=_cmd_rank)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
