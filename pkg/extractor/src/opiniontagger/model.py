"""The multi-task tagger network.

A shared bidirectional LSTM encodes the sentence. An attention branch turns
the encoder output into a same-shape reweighted feature map: a learned
fully-connected transform of each position's features, scaled by a learned
per-position importance score. The aspect and category heads both read the
elementwise product of the encoder output with that map, through separate
classification parameters; the polarity head reads a 1-D convolution over
the encoder features instead. All three heads classify per token.
"""

from __future__ import annotations

import torch
import torch.nn.functional as F
from torch import nn

from .config import ModelConfig


class MultiTaskTagger(nn.Module):
    def __init__(self, config: ModelConfig, vocab_size: int, categories: list[str]):
        super().__init__()
        if vocab_size < 2:
            raise ValueError("vocabulary must include padding and unknown entries")
        if not categories:
            raise ValueError("at least one category label is required")
        self.config = config
        self.categories = list(categories)
        encoder_dim = 2 * config.lstm_hidden
        self.embedding = nn.Embedding(vocab_size, config.embedding_dim, padding_idx=0)
        self.encoder = nn.LSTM(
            config.embedding_dim,
            config.lstm_hidden,
            batch_first=True,
            bidirectional=True,
        )
        self.attention_transform = nn.Linear(encoder_dim, encoder_dim)
        self.attention_score = nn.Linear(encoder_dim, 1)
        self.aspect_head = nn.Linear(encoder_dim, 2)
        self.category_head = nn.Linear(encoder_dim, len(categories) + 1)
        self.conv = nn.Conv1d(encoder_dim, config.conv_features, config.conv_kernel)
        self.polarity_head = nn.Linear(config.conv_features, 4)
        self.dropout = nn.Dropout(config.dropout)

    def forward(self, token_ids: torch.Tensor, mask: torch.Tensor) -> dict:
        """token_ids, mask: (batch, max_tokens); mask is True on real tokens."""
        embedded = self.dropout(self.embedding(token_ids))
        encoded, _ = self.encoder(embedded)  # (B, s, 2h)
        # per-position importance score gating a learned same-shape transform
        scores = torch.sigmoid(self.attention_score(encoded))
        scores = scores * mask.unsqueeze(-1)
        reweighted = scores * torch.tanh(self.attention_transform(encoded))
        gated = encoded * reweighted  # elementwise product feeding both heads

        padded = F.pad(encoded.transpose(1, 2), (self.config.conv_kernel - 1, 0))
        conv_features = torch.relu(self.conv(padded)).transpose(1, 2)  # (B, s, fm)

        return {
            "encoded": encoded,
            "attention": reweighted,
            "conv_features": conv_features,
            "aspect_logits": self.aspect_head(gated),
            "category_logits": self.category_head(gated),
            "polarity_logits": self.polarity_head(conv_features),
        }

    def loss(self, outputs: dict, targets: dict) -> torch.Tensor:
        """Sum of the three per-token cross entropies; -100 marks padding."""
        total = torch.zeros((), device=outputs["aspect_logits"].device)
        for head, logits in (
            ("aspect", outputs["aspect_logits"]),
            ("category", outputs["category_logits"]),
            ("polarity", outputs["polarity_logits"]),
        ):
            total = total + F.cross_entropy(
                logits.reshape(-1, logits.shape[-1]),
                targets[head].reshape(-1),
                ignore_index=-100,
            )
        return total


def build_model(config: ModelConfig, vocab_size: int, categories: list[str]) -> MultiTaskTagger:
    torch.manual_seed(config.seed)
    return MultiTaskTagger(config, vocab_size, categories)
