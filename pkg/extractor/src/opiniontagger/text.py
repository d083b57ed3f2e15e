"""Tokenization and sentence handling shared by training data and inference.

Tokens are whitespace-separated words with punctuation split off as separate
tokens, so "sushi were fantastic, rice was pasty" yields the comma as its own
token. Sentence segmentation matches the engine's corpus contract: the review
title is sentence 0 and the body splits on sentence-final punctuation
followed by whitespace.
"""

from __future__ import annotations

import re

_TOKEN = re.compile(r"\w+(?:'\w+)?|[^\w\s]")
_SENTENCE_BREAK = re.compile(r"(?<=[.!?])\s+")


def tokenize(text: str) -> list[str]:
    return _TOKEN.findall(text)


def tokenize_with_offsets(text: str) -> list[tuple[str, int, int]]:
    """Tokens with their (start, end) character offsets."""
    return [(m.group(0), m.start(), m.end()) for m in _TOKEN.finditer(text)]


def split_body_sentences(body: str) -> list[str]:
    stripped = body.strip()
    if not stripped:
        return []
    return [part for part in _SENTENCE_BREAK.split(stripped) if part]


def review_sentences(title: str, body: str, sentences: list[str] | None = None) -> list[str]:
    """Sentence list for a review: title first, then body sentences."""
    if sentences is not None:
        return [title] + list(sentences)
    return [title] + split_body_sentences(body)


def char_span_to_token_span(
    text: str, start: int, end: int
) -> tuple[int, int] | None:
    """Convert a character span to an inclusive-exclusive token index span."""
    token_indices = [
        i
        for i, (_, token_start, token_end) in enumerate(tokenize_with_offsets(text))
        if token_start < end and token_end > start
    ]
    if not token_indices:
        return None
    return token_indices[0], token_indices[-1] + 1
