"""Model hyperparameters, serialized alongside every checkpoint and report."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional, Union


@dataclass(frozen=True)
class ModelConfig:
    """Hyperparameters of the tagger.

    Defaults are the full-scale setup; tests shrink the dimensions and use
    random-init embeddings. ``embedding_source`` is a path to a text-format
    word-vector file (word followed by values per line) or None for random
    initialization. Optimizer, learning rate, dropout, and seed are recorded
    here so every metrics report states exactly how the model was trained.
    """

    max_tokens: int = 200
    embedding_dim: int = 300
    lstm_hidden: int = 128
    conv_kernel: int = 2
    conv_features: int = 100
    batch_size: int = 16
    epochs: int = 20
    embedding_source: Optional[str] = None
    optimizer: str = "adam"
    learning_rate: float = 1e-3
    dropout: float = 0.0
    seed: int = 13

    def __post_init__(self) -> None:
        for name in (
            "max_tokens",
            "embedding_dim",
            "lstm_hidden",
            "conv_kernel",
            "conv_features",
            "batch_size",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        if not 0.0 <= self.dropout < 1.0:
            raise ValueError("dropout must lie in [0, 1)")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, raw: dict) -> "ModelConfig":
        return cls(**raw)

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2), encoding="utf-8")

    @classmethod
    def load(cls, path: Union[str, Path]) -> "ModelConfig":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
