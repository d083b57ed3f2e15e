"""Multi-task opinion tagger: aspects, categories, and polarities per token.

Trains on span-annotated review sentences and emits opinion-exchange JSONL
for the ranking engine. Interop with the engine is file-based only.
"""

from .config import ModelConfig
from .data import (
    DataError,
    TaggedSentence,
    Vocab,
    load_annotated_json,
    load_corpus_gold,
    load_corpus_sentences,
    load_semeval_xml,
    load_training_data,
)
from .metrics import EvaluationError, evaluate, evaluate_taggings, score_opinions
from .model import MultiTaskTagger, build_model
from .tagging import ExtractedOpinion, TokenTagging, tags_to_opinions
from .text import review_sentences, split_body_sentences, tokenize
from .train import (
    encode_batch,
    load_checkpoint,
    load_pretrained_embeddings,
    predict_tags,
    save_checkpoint,
    train,
)

__version__ = "0.1.0"

__all__ = [
    "DataError",
    "EvaluationError",
    "ExtractedOpinion",
    "ModelConfig",
    "MultiTaskTagger",
    "TaggedSentence",
    "TokenTagging",
    "Vocab",
    "build_model",
    "encode_batch",
    "evaluate",
    "evaluate_taggings",
    "load_annotated_json",
    "load_checkpoint",
    "load_corpus_gold",
    "load_corpus_sentences",
    "load_pretrained_embeddings",
    "load_semeval_xml",
    "load_training_data",
    "predict_tags",
    "review_sentences",
    "save_checkpoint",
    "score_opinions",
    "split_body_sentences",
    "tags_to_opinions",
    "tokenize",
    "train",
]
