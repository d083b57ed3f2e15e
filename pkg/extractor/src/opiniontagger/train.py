"""Training, checkpointing, and inference."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Sequence, Union

import torch

from .config import ModelConfig
from .data import DataError, TaggedSentence, Vocab
from .model import MultiTaskTagger, build_model
from .tagging import ASPECT_IN, ASPECT_OUT, NONE_TAG, POLARITIES, TokenTagging
from .text import tokenize

POLARITY_IDS = {NONE_TAG: 0, "positive": 1, "negative": 2, "neutral": 3}
POLARITY_NAMES = {index: name for name, index in POLARITY_IDS.items()}


def _category_ids(categories: Sequence[str]) -> dict[str, int]:
    ids = {NONE_TAG: 0}
    for index, category in enumerate(categories, start=1):
        ids[category] = index
    return ids


def encode_batch(
    sentences: Sequence[TaggedSentence],
    vocab: Vocab,
    categories: Sequence[str],
    max_tokens: int,
) -> dict[str, torch.Tensor]:
    """Pad/truncate a batch of tagged sentences into tensors (-100 pads targets)."""
    category_ids = _category_ids(categories)
    batch = len(sentences)
    token_ids = torch.zeros((batch, max_tokens), dtype=torch.long)
    mask = torch.zeros((batch, max_tokens), dtype=torch.bool)
    aspect = torch.full((batch, max_tokens), -100, dtype=torch.long)
    category = torch.full((batch, max_tokens), -100, dtype=torch.long)
    polarity = torch.full((batch, max_tokens), -100, dtype=torch.long)
    for row, sentence in enumerate(sentences):
        tagging = sentence.tagging
        length = min(len(sentence.tokens), max_tokens)
        token_ids[row, :length] = torch.tensor(
            vocab.encode(sentence.tokens[:length]), dtype=torch.long
        )
        mask[row, :length] = True
        for col in range(length):
            aspect[row, col] = 1 if tagging.aspect_tags[col] == ASPECT_IN else 0
            cat = tagging.category_tags[col]
            if cat != NONE_TAG and cat not in category_ids:
                raise DataError(
                    f"{sentence.source or sentence.text!r}: category {cat!r} "
                    "not in the model's label set"
                )
            category[row, col] = category_ids.get(cat, 0)
            polarity[row, col] = POLARITY_IDS[tagging.polarity_tags[col]]
    return {
        "token_ids": token_ids,
        "mask": mask,
        "aspect": aspect,
        "category": category,
        "polarity": polarity,
    }


def load_pretrained_embeddings(model: MultiTaskTagger, vocab: Vocab, path: str) -> int:
    """Copy matching vectors from a text-format embedding file; returns hits."""
    dim = model.config.embedding_dim
    hits = 0
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            parts = line.rstrip().split(" ")
            if len(parts) != dim + 1:
                continue  # header line or wrong dimensionality
            token = parts[0].lower()
            if token in vocab.index:
                values = torch.tensor([float(v) for v in parts[1:]])
                with torch.no_grad():
                    model.embedding.weight[vocab.index[token]] = values
                hits += 1
    return hits


def train(
    model: MultiTaskTagger,
    sentences: Sequence[TaggedSentence],
    config: ModelConfig,
    vocab: Vocab,
    epochs: Optional[int] = None,
) -> tuple[MultiTaskTagger, list[float]]:
    """Train in place; returns the model and the per-epoch mean loss curve.

    ``epochs=0`` returns the model untouched with an empty curve.
    """
    if not sentences:
        raise DataError("training corpus is empty")
    epochs = config.epochs if epochs is None else epochs
    if epochs == 0:
        return model, []
    torch.manual_seed(config.seed)
    if config.optimizer != "adam":
        raise ValueError(f"unsupported optimizer {config.optimizer!r}")
    optimizer = torch.optim.Adam(model.parameters(), lr=config.learning_rate)
    losses = []
    batches = [
        encode_batch(
            sentences[start : start + config.batch_size],
            vocab,
            model.categories,
            config.max_tokens,
        )
        for start in range(0, len(sentences), config.batch_size)
    ]
    model.train()
    for _ in range(epochs):
        epoch_loss = 0.0
        for batch in batches:
            optimizer.zero_grad()
            outputs = model(batch["token_ids"], batch["mask"])
            loss = model.loss(outputs, batch)
            loss.backward()
            optimizer.step()
            epoch_loss += float(loss.detach())
        losses.append(epoch_loss / len(batches))
    model.eval()
    return model, losses


def predict_tags(
    model: MultiTaskTagger, vocab: Vocab, sentence: str
) -> TokenTagging:
    """Tag one sentence; padding and truncation stay internal.

    Tokens beyond the model's window come back as O/none; an empty sentence
    yields an empty tagging.
    """
    tokens = tokenize(sentence)
    if not tokens:
        return TokenTagging((), (), (), ())
    max_tokens = model.config.max_tokens
    window = min(len(tokens), max_tokens)
    token_ids = torch.zeros((1, max_tokens), dtype=torch.long)
    mask = torch.zeros((1, max_tokens), dtype=torch.bool)
    token_ids[0, :window] = torch.tensor(vocab.encode(tokens[:window]), dtype=torch.long)
    mask[0, :window] = True
    model.eval()
    with torch.no_grad():
        outputs = model(token_ids, mask)
        aspect_pred = outputs["aspect_logits"][0, :window].argmax(-1).tolist()
        category_pred = outputs["category_logits"][0, :window].argmax(-1).tolist()
        polarity_pred = outputs["polarity_logits"][0, :window].argmax(-1).tolist()
    category_names = [NONE_TAG] + list(model.categories)
    aspect_tags = []
    category_tags = []
    polarity_tags = []
    for index in range(len(tokens)):
        if index >= window:
            aspect_tags.append(ASPECT_OUT)
            category_tags.append(NONE_TAG)
            polarity_tags.append(NONE_TAG)
            continue
        category = category_names[category_pred[index]]
        polarity = POLARITY_NAMES[polarity_pred[index]]
        if category == NONE_TAG:
            polarity = NONE_TAG  # a polarity may only ride on a category
        elif polarity == NONE_TAG:
            category = NONE_TAG
        aspect_tags.append(ASPECT_IN if aspect_pred[index] == 1 else ASPECT_OUT)
        category_tags.append(category)
        polarity_tags.append(polarity)
    return TokenTagging(
        tuple(tokens), tuple(aspect_tags), tuple(category_tags), tuple(polarity_tags)
    )


def save_checkpoint(
    directory: Union[str, Path],
    model: MultiTaskTagger,
    vocab: Vocab,
    config: ModelConfig,
) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    config.save(directory / "config.json")
    (directory / "vocab.json").write_text(
        json.dumps(vocab.to_dict()), encoding="utf-8"
    )
    (directory / "categories.json").write_text(
        json.dumps(model.categories), encoding="utf-8"
    )
    torch.save(model.state_dict(), directory / "weights.pt")


def load_checkpoint(directory: Union[str, Path]) -> tuple[MultiTaskTagger, Vocab, ModelConfig]:
    directory = Path(directory)
    config = ModelConfig.load(directory / "config.json")
    vocab = Vocab.from_dict(
        json.loads((directory / "vocab.json").read_text(encoding="utf-8"))
    )
    categories = json.loads((directory / "categories.json").read_text(encoding="utf-8"))
    model = build_model(config, len(vocab), categories)
    model.load_state_dict(torch.load(directory / "weights.pt", weights_only=True))
    model.eval()
    return model, vocab, config
