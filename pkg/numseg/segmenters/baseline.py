""" Fixed-width baselines
"""
import logging

from numseg.ciphers.core import Segmentation, check_segmentation
from numseg.exceptions import InvalidParameter

from .base import Segmenter, SegmenterReport

logger = logging.getLogger(__name__)


def chunk(text, k):
    """ Cut text into k-symbol pieces, the last one possibly shorter."""
    return [text[i : i + k] for i in range(0, len(text), k)]


def baseline_segment(cipher, k):
    """Split a ciphertext into fixed-width elements.

    Ciphers without word spaces are read as one long symbol stream, line
    breaks removed. Ciphers with word spaces are chunked word by word.

    Args:
        cipher (CipherText): the ciphertext.
        k (int): element width, 1 or 2.

    Returns:
        Segmentation: k-symbol segments; on odd-length input with k=2 the
        last segment holds one symbol.

    Examples:
        >>> baseline_segment(CipherText.from_flat("222"), 2).segments
        ('22', '2')
    """
    return FixedWidthSegmenter(k=k).segment(cipher)


class FixedWidthSegmenter(Segmenter, algo="baseline"):
    """Baseline that assumes every element has the same width.

    Attributes:
        k (int): element width.
    """

    def __init__(self, k=2):
        if k < 1:
            raise InvalidParameter(f"Baseline width must be positive, got {k}.")
        self.k = k
        self._vocabulary = frozenset()

    def train(self, corpus):
        return self

    def params(self):
        return {"k": self.k}

    @property
    def vocabulary(self):
        """ Distinct elements of the last segmentation."""
        return self._vocabulary

    def segment_span(self, span):
        return chunk(span, self.k)

    def segment(self, cipher):
        if cipher.has_word_spaces:
            segmentation = super().segment(cipher)
        else:
            segmentation = Segmentation(chunk(cipher.flat, self.k))
            check_segmentation(segmentation, cipher)
        self._vocabulary = segmentation.vocabulary

        return segmentation

    def run(self, cipher):
        segmentation = self.segment(cipher)

        return SegmenterReport(
            vocabulary=self.vocabulary,
            segmentations=[segmentation],
            diagnostics={},
        )
