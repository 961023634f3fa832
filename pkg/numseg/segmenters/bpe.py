""" Byte pair encoding over cipher symbols
"""
import collections
import logging

from codetiming import Timer

import numseg.constants as const
from numseg.exceptions import InvalidParameter

from .base import Segmenter

logger = logging.getLogger(__name__)

MergeVocabulary = collections.namedtuple(
    "MergeVocabulary", "merges pieces max_piece_len"
)


def _count_pairs(words, max_piece_len):
    pairs = collections.Counter()
    for tokens, weight in words.items():
        for left, right in zip(tokens, tokens[1:]):
            if max_piece_len and len(left) + len(right) > max_piece_len:
                continue
            pairs[(left, right)] += weight

    return pairs


def apply_merge(tokens, pair):
    """Replace occurrences of pair in tokens, left to right, non-overlapping.

    Args:
        tokens (tuple[str]): current pieces of a span.
        pair (tuple[str, str]): the merge.

    Returns:
        tuple[str]: pieces after the merge.
    """
    left, right = pair
    merged, i = [], 0
    while i < len(tokens):
        if i + 1 < len(tokens) and tokens[i] == left and tokens[i + 1] == right:
            merged.append(left + right)
            i += 2
        else:
            merged.append(tokens[i])
            i += 1

    return tuple(merged)


@Timer(name="bpe_train", text=const.TIMING_TEXT, logger=logging.debug)
def bpe_train(corpus, vocab_size, max_piece_len=None):
    """Learn a BPE merge list from a ciphertext.

    Spans (words, or lines when the cipher has no word spaces) are hard
    merge boundaries. The piece set starts with the cipher alphabet. At each
    step the most frequent adjacent pair is merged; pairs whose merge would
    exceed max_piece_len are skipped and ties go to the lexicographically
    smallest pair. Training stops at vocab_size pieces or when no pair occurs
    at least twice.

    Args:
        corpus (CipherText): training ciphertext.
        vocab_size (int): target number of pieces, alphabet included.
        max_piece_len (int): longest allowed piece, None for unlimited.

    Returns:
        MergeVocabulary: ordered merges and the resulting piece set.

    Raises:
        InvalidParameter: if vocab_size is smaller than the alphabet.
    """
    alphabet = list(corpus.alphabet)
    if vocab_size < len(alphabet):
        raise InvalidParameter(
            f"BPE vocab size {vocab_size} is smaller than the alphabet "
            f"({len(alphabet)} symbols)."
        )
    words = collections.Counter(tuple(span) for span in corpus.spans())
    pieces = set(alphabet)
    merges = []
    while len(pieces) < vocab_size:
        pairs = _count_pairs(words, max_piece_len)
        if not pairs:
            break
        pair, count = min(pairs.items(), key=lambda item: (-item[1], item[0]))
        if count < 2:
            break
        merges.append(pair)
        pieces.add(pair[0] + pair[1])
        updated = collections.Counter()
        for tokens, weight in words.items():
            updated[apply_merge(tokens, pair)] += weight
        words = updated
        logger.debug(f"BPE merge {len(merges)}: {pair} ({count} occurrences)")

    return MergeVocabulary(
        merges=tuple(merges),
        pieces=frozenset(pieces),
        max_piece_len=max_piece_len,
    )


def bpe_segment_span(span, vocab):
    """ Replay the merges of vocab in rank order on one span."""
    tokens = tuple(span)
    for pair in vocab.merges:
        if len(tokens) < 2:
            break
        tokens = apply_merge(tokens, pair)

    return list(tokens)


def bpe_segment(cipher, vocab):
    """Segment a ciphertext by replaying a merge list.

    Args:
        cipher (CipherText): the ciphertext.
        vocab (MergeVocabulary): the learned merges.

    Returns:
        Segmentation: segments joining to cipher.flat.
    """
    return BpeSegmenter.from_vocabulary(vocab).segment(cipher)


class BpeSegmenter(Segmenter, algo="bpe"):
    """Constrained BPE segmenter.

    Attributes:
        vocab_size (int): target piece count.
        max_piece_len (int): piece length cap, None for unlimited.
        merge_vocabulary (MergeVocabulary): learned merges, None before
            training.
        alphabet (str): symbols the piece set started from.
    """

    def __init__(self, vocab_size=const.DEFAULT_VOCAB_SIZE, max_piece_len=None):
        self.vocab_size = vocab_size
        self.max_piece_len = max_piece_len
        self.merge_vocabulary = None
        self.alphabet = None

    @classmethod
    def from_vocabulary(cls, vocab):
        segmenter = cls(
            vocab_size=len(vocab.pieces), max_piece_len=vocab.max_piece_len
        )
        segmenter.merge_vocabulary = vocab
        singles = sorted(p for p in vocab.pieces if len(p) == 1)
        segmenter.alphabet = "".join(singles)

        return segmenter

    @classmethod
    def from_document(cls, document):
        params = document["params"]
        merges = tuple(tuple(pair) for pair in document["merges"])
        pieces = set(document["alphabet"])
        pieces.update(left + right for left, right in merges)
        segmenter = cls.from_vocabulary(
            MergeVocabulary(
                merges=merges,
                pieces=frozenset(pieces),
                max_piece_len=params.get("max_piece_len"),
            )
        )
        segmenter.vocab_size = params.get("vocab_size", segmenter.vocab_size)
        segmenter.alphabet = document["alphabet"]

        return segmenter

    def train(self, corpus):
        self.merge_vocabulary = bpe_train(
            corpus, self.vocab_size, self.max_piece_len
        )
        self.alphabet = corpus.alphabet.symbols
        logger.info(
            f"Learned {len(self.merge_vocabulary.merges)} BPE merges, "
            f"{len(self.merge_vocabulary.pieces)} pieces."
        )

        return self

    def params(self):
        return {
            "vocab_size": self.vocab_size,
            "max_piece_len": self.max_piece_len,
        }

    def payload(self):
        return {
            "alphabet": self.alphabet,
            "merges": [list(pair) for pair in self.merge_vocabulary.merges],
        }

    @property
    def vocabulary(self):
        if self.merge_vocabulary is None:
            return frozenset()
        return self.merge_vocabulary.pieces

    @property
    def diagnostics(self):
        if self.merge_vocabulary is None:
            return {}
        return {"iterations": len(self.merge_vocabulary.merges)}

    def segment_span(self, span):
        return bpe_segment_span(span, self.merge_vocabulary)
