""" Evaluation metrics for segmentations and decoded plaintext

Vocabulary F1 compares learned and gold element types, the segmentation error
rate counts single-segment insertions, deletions and substitutions per
reference segment, and the token error rate counts character edits per
reference character.
"""
import collections
import logging
import re

import Levenshtein

import numseg.constants as const

from .exceptions import EmptyReference

logger = logging.getLogger(__name__)

_NOMENCLATURE = re.compile(const.NOMENCLATURE_PATTERN)

F1Score = collections.namedtuple("F1Score", "precision recall f1")

EvalReport = collections.namedtuple(
    "EvalReport",
    [
        "f1",
        "precision",
        "recall",
        "seg_er",
        "ter",
        "segment_edits",
        "reference_segments",
        "char_edits",
        "reference_chars",
    ],
    defaults=(None,) * 9,
)
EvalReport.__doc__ = """Metrics of one evaluation.

Fields not computed in an evaluation mode are None. Ratios are fractions,
seg_er and ter may exceed 1.
"""


def vocab_f1(learned, gold, weighted=False):
    """Exact-match precision, recall and F1 of a learned vocabulary.

    Args:
        learned (iterable of str): learned pieces.
        gold (iterable of str): gold element types.
        weighted (bool): count tokens instead of types; learned and gold are
            then token sequences or Counters and matches are the multiset
            intersection.

    Returns:
        F1Score: precision, recall and f1, all in [0, 1].

    Raises:
        EmptyReference: if gold is empty.
    """
    if weighted:
        learned, gold = collections.Counter(learned), collections.Counter(gold)
        matched = sum((learned & gold).values())
        n_learned, n_gold = sum(learned.values()), sum(gold.values())
    else:
        learned, gold = set(learned), set(gold)
        matched = len(learned & gold)
        n_learned, n_gold = len(learned), len(gold)
    if not n_gold:
        raise EmptyReference("Gold vocabulary is empty.")

    precision = matched / n_learned if n_learned else 0.0
    recall = matched / n_gold
    f1 = (
        2 * precision * recall / (precision + recall)
        if precision + recall
        else 0.0
    )

    return F1Score(precision, recall, f1)


def segment_edits(hyp, ref):
    """ Levenshtein distance between two segment sequences."""
    return Levenshtein.distance(list(hyp), list(ref))


def seg_er(hyp, ref):
    """Segmentation error rate.

    Segments are compared as atomic strings; the hypothesis need not spell
    the same symbols as the reference.

    Args:
        hyp (Segmentation or sequence of str): system segmentation.
        ref (Segmentation or sequence of str): gold segmentation.

    Returns:
        float: segment edits divided by the number of reference segments.

    Raises:
        EmptyReference: if ref has no segments.
    """
    ref = list(ref)
    if not ref:
        raise EmptyReference("Reference segmentation is empty.")

    return segment_edits(hyp, ref) / len(ref)


def _ter_tokens(text):
    """ Characters of text with every nomenclature placeholder as one class."""
    return list(_NOMENCLATURE.sub(const.NOMENCLATURE_CLASS_CHAR, text))


def char_edits(hyp, ref):
    """ Character Levenshtein distance, nomenclature placeholders collapsed."""
    return Levenshtein.distance(_ter_tokens(hyp), _ter_tokens(ref))


def ter(hyp, ref):
    """Character-level token error rate.

    Args:
        hyp (str): decoded plaintext.
        ref (str): gold plaintext.

    Returns:
        float: character edits divided by the reference length.

    Raises:
        EmptyReference: if ref is empty.
    """
    reference = _ter_tokens(ref)
    if not reference:
        raise EmptyReference("Reference plaintext is empty.")

    return char_edits(hyp, ref) / len(reference)


def evaluate_segmentation(hyp, ref, vocabulary=None, weighted=False):
    """Vocabulary F1 and segmentation error rate of one segmentation.

    Word spaces play no part: both sides are compared as flat segment
    sequences.

    Args:
        hyp (Segmentation): system segmentation.
        ref (Segmentation): gold segmentation.
        vocabulary (iterable of str): learned vocabulary, the distinct
            segments of hyp by default.
        weighted (bool): token-weighted F1.

    Returns:
        EvalReport: f1, precision, recall, seg_er and segment counts.
    """
    if weighted:
        score = vocab_f1(hyp.segments, ref.segments, weighted=True)
    else:
        learned = hyp.vocabulary if vocabulary is None else vocabulary
        score = vocab_f1(learned, ref.vocabulary)
    edits = segment_edits(hyp, ref)
    logger.debug(
        f"Segmentation F1 {score.f1:.4f}, {edits} edits over {len(ref)} "
        f"reference segments."
    )

    return EvalReport(
        f1=score.f1,
        precision=score.precision,
        recall=score.recall,
        seg_er=seg_er(hyp, ref),
        segment_edits=edits,
        reference_segments=len(ref),
    )


def evaluate_plaintext(hyp, ref):
    """ Token error rate report of decoded plaintext against gold."""
    return EvalReport(
        ter=ter(hyp, ref),
        char_edits=char_edits(hyp, ref),
        reference_chars=len(_ter_tokens(ref)),
    )
