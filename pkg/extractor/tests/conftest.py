import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from opiniontagger import ModelConfig, load_annotated_json

ENGINE_FIXTURES = Path(__file__).resolve().parent.parent.parent / "fixtures"


def annotated(text, *opinions):
    entries = []
    for target, category, polarity in opinions:
        if target is None:
            entries.append(
                {"target": None, "category": category, "polarity": polarity}
            )
        else:
            at = text.index(target)
            entries.append(
                {
                    "target": target,
                    "category": category,
                    "polarity": polarity,
                    "from": at,
                    "to": at + len(target),
                }
            )
    return {"text": text, "opinions": entries}


MEMORIZATION_DOC = {
    "sentences": [
        annotated(
            "While sake and sushi were fantastic, rice was pasty",
            ("sake", "drinks", "positive"),
            ("sushi", "food", "positive"),
            ("rice", "food", "negative"),
        ),
        annotated("The staff were friendly and quick.", ("staff", "service", "positive")),
        annotated("Our waiter forgot the order twice.", ("waiter", "service", "negative")),
        annotated("The wine list impressed us.", ("wine", "drinks", "positive")),
        annotated(
            "Great atmosphere and warm lighting.",
            ("atmosphere", "ambience", "positive"),
            ("lighting", "ambience", "positive"),
        ),
        annotated("The view from the terrace is stunning.", ("view", "location", "positive")),
        annotated("We will definitely come back.", (None, "restaurant", "positive")),
        annotated("The menu is short but balanced.", ("menu", "food", "positive")),
        annotated("Portions felt small for the price.", ("Portions", "food", "negative")),
        annotated("An average night out, nothing special.", (None, "restaurant", "neutral")),
    ]
}


@pytest.fixture(scope="session")
def engine_fixtures():
    return ENGINE_FIXTURES


@pytest.fixture(scope="session")
def memorization_sentences(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "memorize.json"
    path.write_text(json.dumps(MEMORIZATION_DOC), encoding="utf-8")
    return load_annotated_json(path)


@pytest.fixture(scope="session")
def tiny_config():
    return ModelConfig(
        max_tokens=16,
        embedding_dim=32,
        lstm_hidden=32,
        conv_kernel=2,
        conv_features=32,
        batch_size=10,
        epochs=200,
        learning_rate=0.02,
        dropout=0.0,
        seed=7,
    )


@pytest.fixture(scope="session")
def memorized(memorization_sentences, tiny_config):
    """One shared training run on the 10-sentence fixture (<= 200 epochs).

    Returns (model, vocab, losses, metrics, elapsed_seconds).
    """
    import time

    from opiniontagger import Vocab, build_model, evaluate, train

    categories = ["restaurant", "food", "service", "drinks", "ambience", "location"]
    vocab = Vocab.from_sentences(memorization_sentences)
    model = build_model(tiny_config, len(vocab), categories)
    losses = []
    metrics = None
    start = time.perf_counter()
    for _ in range(8):  # 8 x 25 = at most 200 epochs
        model, chunk = train(model, memorization_sentences, tiny_config, vocab, epochs=25)
        losses.extend(chunk)
        metrics = evaluate(model, vocab, memorization_sentences)
        if (
            min(
                metrics["aspect_f1"],
                metrics["category_f1"],
                metrics["polarity_accuracy"],
            )
            >= 0.9
        ):
            break
    elapsed = time.perf_counter() - start
    return model, vocab, losses, metrics, elapsed
