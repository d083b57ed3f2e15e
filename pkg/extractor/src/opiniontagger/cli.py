"""Command-line entry point.

    opiniontagger train   --data D --config F --out DIR [--categories a,b,c]
    opiniontagger predict --model DIR --corpus F --out F.jsonl
    opiniontagger eval    --model DIR --data D [--out metrics.json]

``train --data`` accepts annotated XML or the equivalent JSON; ``predict``
reads a review-corpus JSON and writes opinion-exchange JSONL, one opinion per
line, ready for the ranking engine.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .config import ModelConfig
from .data import (
    DataError,
    Vocab,
    load_corpus_sentences,
    load_training_data,
)
from .metrics import EvaluationError, evaluate
from .model import build_model
from .tagging import tags_to_opinions
from .train import (
    load_checkpoint,
    load_pretrained_embeddings,
    predict_tags,
    save_checkpoint,
    train,
)

DEFAULT_CATEGORIES = ("restaurant", "food", "service", "drinks", "ambience", "location")


def _cmd_train(args: argparse.Namespace) -> int:
    config = ModelConfig.load(args.config) if args.config else ModelConfig()
    sentences = load_training_data(args.data)
    if args.categories:
        categories = [c.strip() for c in args.categories.split(",") if c.strip()]
    else:
        categories = sorted(
            {op.category for sentence in sentences for op in sentence.opinions}
        ) or list(DEFAULT_CATEGORIES)
    vocab = Vocab.from_sentences(sentences)
    model = build_model(config, len(vocab), categories)
    if config.embedding_source:
        hits = load_pretrained_embeddings(model, vocab, config.embedding_source)
        print(f"loaded {hits} pretrained vectors", file=sys.stderr)
    model, losses = train(model, sentences, config, vocab)
    save_checkpoint(args.out, model, vocab, config)
    (Path(args.out) / "loss_curve.json").write_text(
        json.dumps(losses), encoding="utf-8"
    )
    print(
        f"trained on {len(sentences)} sentences for {len(losses)} epochs; "
        f"final loss {losses[-1]:.4f}" if losses else "epochs=0: model saved untrained"
    )
    return 0


def _cmd_predict(args: argparse.Namespace) -> int:
    model, vocab, _ = load_checkpoint(args.model)
    sentences, _ = load_corpus_sentences(args.corpus)
    records = []
    for sentence in sentences:
        tagging = predict_tags(model, vocab, sentence.text)
        for opinion in tags_to_opinions(tagging):
            records.append(
                opinion.to_exchange_record(
                    sentence.expert, sentence.alternative, sentence.sentence_index
                )
            )
    with open(args.out, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record, sort_keys=True) + "\n")
    print(f"wrote {len(records)} opinions from {len(sentences)} sentences to {args.out}")
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    model, vocab, config = load_checkpoint(args.model)
    sentences = load_training_data(args.data)
    metrics = evaluate(model, vocab, sentences)
    report = {**{k: round(v, 4) for k, v in metrics.items()}, "config": config.to_dict()}
    blob = json.dumps(report, indent=2)
    if args.out:
        Path(args.out).write_text(blob + "\n", encoding="utf-8")
    print(blob)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opiniontagger",
        description="Train and run the multi-task opinion tagger",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train")
    p_train.add_argument("--data", required=True)
    p_train.add_argument("--config")
    p_train.add_argument("--out", required=True)
    p_train.add_argument("--categories", help="comma-separated criterion ids")
    p_train.set_defaults(func=_cmd_train)

    p_predict = sub.add_parser("predict")
    p_predict.add_argument("--model", required=True)
    p_predict.add_argument("--corpus", required=True)
    p_predict.add_argument("--out", required=True)
    p_predict.set_defaults(func=_cmd_predict)

    p_eval = sub.add_parser("eval")
    p_eval.add_argument("--model", required=True)
    p_eval.add_argument("--data", required=True)
    p_eval.add_argument("--out")
    p_eval.set_defaults(func=_cmd_eval)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DataError, EvaluationError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
