from .base import (
    MODELS,
    Segmenter,
    SegmenterReport,
    create_model,
    create_segmenter,
    load_segmenter,
)
from .baseline import FixedWidthSegmenter, baseline_segment
from .bpe import BpeSegmenter, MergeVocabulary, bpe_segment, bpe_train
from .unigram import (
    UnigramModel,
    UnigramSegmenter,
    estimate_vocab_size,
    unigram_segment,
    unigram_train,
)

__all__ = [
    "MODELS",
    "BpeSegmenter",
    "FixedWidthSegmenter",
    "MergeVocabulary",
    "Segmenter",
    "SegmenterReport",
    "UnigramModel",
    "UnigramSegmenter",
    "baseline_segment",
    "bpe_segment",
    "bpe_train",
    "create_model",
    "create_segmenter",
    "estimate_vocab_size",
    "load_segmenter",
    "unigram_segment",
    "unigram_train",
]
