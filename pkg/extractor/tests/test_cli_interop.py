"""CLI behavior and file-based interop with the ranking engine.

The engine is driven strictly through its own command line; the only contract
between the two packages is the corpus JSON going in and the opinion-exchange
JSONL coming out.
"""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from opiniontagger import Vocab, build_model, save_checkpoint, tokenize
from opiniontagger.cli import main

CATEGORIES = ["restaurant", "food", "service", "drinks", "ambience", "location"]


@pytest.fixture(scope="module")
def corpus_path(engine_fixtures):
    return engine_fixtures / "corpus" / "restaurants.json"


@pytest.fixture(scope="module")
def checkpoint(tmp_path_factory, tiny_config, corpus_path):
    """A small untrained checkpoint whose vocabulary covers the corpus."""
    doc = json.loads(corpus_path.read_text(encoding="utf-8"))
    tokens = []
    for review in doc["reviews"]:
        tokens.extend(tokenize(review["title"]))
        tokens.extend(tokenize(review["body"]))
    vocab = Vocab(tokens)
    model = build_model(tiny_config, len(vocab), CATEGORIES)
    directory = tmp_path_factory.mktemp("model") / "ckpt"
    save_checkpoint(directory, model, vocab, tiny_config)
    return directory


class TestCli:
    def test_train_eval_round_trip(self, tmp_path, capsys):
        doc = {
            "sentences": [
                {
                    "text": "The staff were lovely.",
                    "opinions": [
                        {
                            "target": "staff",
                            "category": "service",
                            "polarity": "positive",
                            "from": 4,
                            "to": 9,
                        }
                    ],
                },
                {"text": "Nothing else to report.", "opinions": []},
            ]
        }
        data = tmp_path / "train.json"
        data.write_text(json.dumps(doc), encoding="utf-8")
        config = tmp_path / "config.json"
        config.write_text(
            json.dumps(
                {
                    "max_tokens": 12,
                    "embedding_dim": 16,
                    "lstm_hidden": 8,
                    "conv_kernel": 2,
                    "conv_features": 8,
                    "batch_size": 2,
                    "epochs": 3,
                    "learning_rate": 0.01,
                    "seed": 3,
                }
            ),
            encoding="utf-8",
        )
        out = tmp_path / "model"
        assert main(["train", "--data", str(data), "--config", str(config), "--out", str(out)]) == 0
        capsys.readouterr()
        assert (out / "weights.pt").exists()
        assert (out / "loss_curve.json").exists()

        metrics_path = tmp_path / "metrics.json"
        assert main(
            ["eval", "--model", str(out), "--data", str(data), "--out", str(metrics_path)]
        ) == 0
        capsys.readouterr()
        metrics = json.loads(metrics_path.read_text(encoding="utf-8"))
        assert set(metrics) == {"aspect_f1", "category_f1", "polarity_accuracy", "config"}
        assert metrics["config"]["epochs"] == 3  # training setup echoed in the report

    def test_predict_writes_exchange_lines(self, checkpoint, corpus_path, tmp_path, capsys):
        out = tmp_path / "pred.jsonl"
        assert main(
            ["predict", "--model", str(checkpoint), "--corpus", str(corpus_path), "--out", str(out)]
        ) == 0
        capsys.readouterr()
        for line in out.read_text(encoding="utf-8").splitlines():
            record = json.loads(line)
            assert set(record) == {
                "expert",
                "alternative",
                "sentence_index",
                "aspect_term",
                "category",
                "polarity",
            }
            assert record["category"] in CATEGORIES
            assert record["polarity"] in ("positive", "negative", "neutral")


class TestEngineInterop:
    def test_predictions_drive_a_combined_run(self, checkpoint, corpus_path, tmp_path, capsys):
        predictions = tmp_path / "pred.jsonl"
        assert main(
            [
                "predict",
                "--model", str(checkpoint),
                "--corpus", str(corpus_path),
                "--out", str(predictions),
            ]
        ) == 0
        capsys.readouterr()
        result = subprocess.run(
            [
                sys.executable, "-m", "reviewrank.cli",
                "run",
                "--scenario", "combined",
                "--corpus", str(corpus_path),
                "--opinions", str(predictions),
                "--format", "json",
                "--summary",
            ],
            capture_output=True,
            text=True,
            timeout=120,
        )
        assert result.returncode == 0, result.stderr
        report = json.loads(result.stdout)
        assert report["scenario"] == "combined"
        assert set(report["fp"]) == {"x1", "x2", "x3", "x4"}
        assert len(report["ranking"]["order"]) == 4
        assert abs(sum(report["weights"].values()) - 1.0) < 1e-6
