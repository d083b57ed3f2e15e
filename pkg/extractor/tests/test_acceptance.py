"""Acceptance gate for the tagger: one PASS/FAIL line per criterion.

Full-scale training against reference benchmark scores is out of scope
here: no seeds, splits, or optimizer settings accompany them, so they
are not deterministically reproducible at desk scale. These checks are the
property-based acceptance instead; see the README for the best-effort
full-scale instructions.
"""

import json
import subprocess
import sys

import torch

from opiniontagger import ModelConfig, build_model
from opiniontagger.cli import main

CATEGORIES = ["restaurant", "food", "service", "drinks", "ambience", "location"]


def report_line(name, ok):
    print(f"{'PASS' if ok else 'FAIL'}  {name}")
    assert ok, name


def test_model_shapes_match_default_config():
    config = ModelConfig()
    model = build_model(config, vocab_size=64, categories=CATEGORIES)
    token_ids = torch.randint(2, 64, (1, config.max_tokens))
    mask = torch.ones((1, config.max_tokens), dtype=torch.bool)
    with torch.no_grad():
        outputs = model(token_ids, mask)
    ok = tuple(outputs["encoded"].shape[1:]) == (200, 256)
    ok = ok and tuple(outputs["conv_features"].shape[1:]) == (200, 100)
    report_line("shapes: encoder (200, 256), polarity features (200, 100)", ok)


def test_memorization_within_budget(memorized):
    _, _, losses, metrics, elapsed = memorized
    ok = len(losses) <= 200
    ok = ok and all(
        metrics[key] >= 0.9
        for key in ("aspect_f1", "category_f1", "polarity_accuracy")
    )
    ok = ok and elapsed < 300.0
    report_line(
        f"memorization: F1 >= 0.9 per task in {len(losses)} epochs, "
        f"{elapsed:.1f}s < 300s",
        ok,
    )


def test_end_to_end_interop(memorized, engine_fixtures, tmp_path, capsys):
    model, vocab, _, _, _ = memorized
    from opiniontagger import save_checkpoint

    checkpoint = tmp_path / "ckpt"
    save_checkpoint(checkpoint, model, vocab, model.config)
    corpus = engine_fixtures / "corpus" / "restaurants.json"
    predictions = tmp_path / "pred.jsonl"
    predict_code = main(
        [
            "predict",
            "--model", str(checkpoint),
            "--corpus", str(corpus),
            "--out", str(predictions),
        ]
    )
    capsys.readouterr()
    engine = subprocess.run(
        [
            sys.executable, "-m", "reviewrank.cli",
            "run",
            "--scenario", "combined",
            "--corpus", str(corpus),
            "--opinions", str(predictions),
            "--format", "json",
            "--summary",
        ],
        capture_output=True,
        text=True,
        timeout=120,
    )
    ok = predict_code == 0 and engine.returncode == 0
    if ok:
        report = json.loads(engine.stdout)
        ok = set(report["fp"]) == {"x1", "x2", "x3", "x4"} and len(
            report["ranking"]["order"]
        ) == 4
    report_line(
        "interop: predictions ingest into the engine and yield a combined report",
        ok,
    )