from .exceptions import EmptyReference
from .metrics import (
    EvalReport,
    F1Score,
    char_edits,
    evaluate_plaintext,
    evaluate_segmentation,
    seg_er,
    segment_edits,
    ter,
    vocab_f1,
)
from .statistics import CipherStatistics, segmentation_statistics

__all__ = [
    "CipherStatistics",
    "EmptyReference",
    "EvalReport",
    "F1Score",
    "char_edits",
    "evaluate_plaintext",
    "evaluate_segmentation",
    "seg_er",
    "segment_edits",
    "segmentation_statistics",
    "ter",
    "vocab_f1",
]
