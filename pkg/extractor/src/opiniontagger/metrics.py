"""Evaluation: exact-span aspect F1, per-opinion category F1, polarity accuracy."""

from __future__ import annotations

from collections import Counter
from typing import Sequence

from .data import TaggedSentence, Vocab
from .model import MultiTaskTagger
from .tagging import ExtractedOpinion, TokenTagging, tags_to_opinions
from .train import predict_tags


class EvaluationError(ValueError):
    pass


def _f1(tp: int, fp: int, fn: int) -> float:
    if tp == 0:
        return 0.0
    precision = tp / (tp + fp)
    recall = tp / (tp + fn)
    return 2 * precision * recall / (precision + recall)


def score_opinions(
    gold_per_sentence: Sequence[Sequence[ExtractedOpinion]],
    predicted_per_sentence: Sequence[Sequence[ExtractedOpinion]],
) -> dict[str, float]:
    """Compare per-sentence opinion lists.

    Aspect F1 is over exact explicit token spans; category F1 over the
    multiset of per-opinion category labels (implicit included); polarity
    accuracy over opinions whose aspect was correctly located (explicit
    matched by span, implicit matched by category).
    """
    span_tp = span_fp = span_fn = 0
    cat_tp = cat_fp = cat_fn = 0
    matched = polarity_correct = 0
    for gold, predicted in zip(gold_per_sentence, predicted_per_sentence):
        gold_spans = Counter(op.token_span for op in gold if op.token_span is not None)
        pred_spans = Counter(op.token_span for op in predicted if op.token_span is not None)
        overlap = gold_spans & pred_spans
        span_tp += sum(overlap.values())
        span_fp += sum((pred_spans - gold_spans).values())
        span_fn += sum((gold_spans - pred_spans).values())

        gold_categories = Counter(op.category for op in gold)
        pred_categories = Counter(op.category for op in predicted)
        cat_overlap = gold_categories & pred_categories
        cat_tp += sum(cat_overlap.values())
        cat_fp += sum((pred_categories - gold_categories).values())
        cat_fn += sum((gold_categories - pred_categories).values())

        gold_explicit = {
            op.token_span: op for op in gold if op.token_span is not None
        }
        for op in predicted:
            if op.token_span is not None and op.token_span in gold_explicit:
                matched += 1
                if gold_explicit[op.token_span].polarity == op.polarity:
                    polarity_correct += 1
        gold_implicit = {op.category: op for op in gold if op.token_span is None}
        for op in predicted:
            if op.token_span is None and op.category in gold_implicit:
                matched += 1
                if gold_implicit[op.category].polarity == op.polarity:
                    polarity_correct += 1
    return {
        "aspect_f1": _f1(span_tp, span_fp, span_fn),
        "category_f1": _f1(cat_tp, cat_fp, cat_fn),
        "polarity_accuracy": polarity_correct / matched if matched else 0.0,
    }


def gold_opinions_of(sentence: TaggedSentence) -> list[ExtractedOpinion]:
    return [
        ExtractedOpinion(
            aspect_term=op.aspect_term,
            category=op.category,
            polarity=op.polarity,
            token_span=op.token_span,
        )
        for op in sentence.opinions
    ]


def evaluate_taggings(
    sentences: Sequence[TaggedSentence],
    predicted_taggings: Sequence[TokenTagging],
) -> dict[str, float]:
    if not sentences:
        raise EvaluationError("evaluation corpus is empty")
    gold = [gold_opinions_of(sentence) for sentence in sentences]
    predicted = [tags_to_opinions(tagging) for tagging in predicted_taggings]
    return score_opinions(gold, predicted)


def evaluate(
    model: MultiTaskTagger, vocab: Vocab, sentences: Sequence[TaggedSentence]
) -> dict[str, float]:
    if not sentences:
        raise EvaluationError("evaluation corpus is empty")
    predictions = [predict_tags(model, vocab, sentence.text) for sentence in sentences]
    return evaluate_taggings(sentences, predictions)
