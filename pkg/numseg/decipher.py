""" Known-key decipherment of non-deterministic ciphers
"""
import collections
import logging

from codetiming import Timer

import numseg.constants as const
from numseg.ciphers.core import Segmentation, check_segmentation
from numseg.exceptions import DecodingError, InvalidParameter
from numseg.fst.exceptions import UnsegmentablePosition
from numseg.fst.lattice import (
    CONTEXT_WIDTH,
    build_key_fst,
    build_segmentation_fst,
    plaintext_tokens,
)
from numseg.fst.wfst import compose, shortest_path
from numseg.lm.charlm import lm_to_acceptor

logger = logging.getLogger(__name__)

Decoded = collections.namedtuple("Decoded", "plaintext segmentation weight")
Decoded.__doc__ = """Result of a known-key decode.

Attributes:
    plaintext (str): best plaintext, nomenclature elements as placeholders.
    segmentation (Segmentation): key elements read from the cipher.
    weight (float): minus the LM log probability of the plaintext.
"""

_Window = collections.namedtuple("_Window", "segments tokens weight")


def _extra_tokens(key_fst, lm):
    return [t for t in key_fst.osymbols.symbols() if t not in lm.vocab]


def _decode_window(flat, key, key_fst, acceptor, open_end=False):
    """Best reading of a symbol string.

    Segment boundaries are read off the ("pos", i) labels of the
    segmentation lattice states along the best path.
    """
    segmentation_fst = build_segmentation_fst(flat, key, open_end=open_end)
    lattice = compose(compose(segmentation_fst, key_fst), acceptor)
    path = shortest_path(lattice)
    boundaries = []
    for state in path.states:
        (segmentation_label, _, _), _, _ = lattice.state_label(state)
        kind, position = segmentation_label[0], segmentation_label[1]
        if kind == "pos" and (not boundaries or boundaries[-1] != position):
            boundaries.append(position)
    segments = [flat[i:j] for i, j in zip(boundaries, boundaries[1:])]

    return _Window(segments, path.olabels, path.weight)


@Timer(name="decipher_with_key", text=const.TIMING_TEXT, logger=logging.info)
def decipher_with_key(cipher, key, lm):
    """Most probable reading of a cipher under a known key.

    Composes the segmentation lattice, the key transducer and the language
    model acceptor and takes the best path.

    Args:
        cipher (CipherText): the ciphertext; word spaces and line breaks are
            ignored.
        key (CipherKey): the key.
        lm (CharNgramLm): plaintext language model.

    Returns:
        Decoded: plaintext, key-consistent segmentation and path weight.

    Raises:
        UnsegmentablePosition: if the key cannot cover the cipher.
        NoPath: if no reading is accepted by the language model.
    """
    key_fst = build_key_fst(key)
    acceptor = lm_to_acceptor(lm, _extra_tokens(key_fst, lm))
    window = _decode_window(cipher.flat, key, key_fst, acceptor)
    segmentation = Segmentation(window.segments)
    check_segmentation(segmentation, cipher)
    logger.debug(
        f"Decoded {len(cipher)} symbols into {len(segmentation)} elements, "
        f"weight {window.weight:.4f}."
    )

    return Decoded("".join(window.tokens), segmentation, window.weight)


@Timer(name="chunked_decode", text=const.TIMING_TEXT, logger=logging.info)
def chunked_decode(cipher, key, lm, chunk):
    """Decode a long cipher window by window.

    Each window of chunk symbols is decoded with an open end. Segments that
    end within the first chunk - chunk // 2 symbols are committed, the next
    window starts at the last committed boundary and the language model
    resumes from the committed plaintext. Stitch points are segment
    boundaries, so no key element is ever split.

    Args:
        cipher (CipherText): the ciphertext.
        key (CipherKey): the key.
        lm (CharNgramLm): plaintext language model.
        chunk (int): window length in symbols.

    Returns:
        Decoded: plaintext, segmentation and the LM weight of the plaintext.

    Raises:
        InvalidParameter: if chunk < 2 * lm.order.
        UnsegmentablePosition: if the key cannot cover a window, at its
            offset in the cipher.
        NoPath: if no reading of a window is accepted.
    """
    if chunk < 2 * lm.order:
        raise InvalidParameter(
            f"Chunk size {chunk} is smaller than twice the LM order "
            f"({2 * lm.order})."
        )
    flat = cipher.flat
    if chunk >= len(flat):
        return decipher_with_key(cipher, key, lm)

    key_fst = build_key_fst(key)
    acceptor = lm_to_acceptor(lm, _extra_tokens(key_fst, lm))
    keep = chunk - chunk // 2
    position, history = 0, list(lm.start_history)
    segments, tokens = [], []
    while position < len(flat):
        last = position + chunk >= len(flat)
        start = acceptor.find_state(lm.state_history(history))
        try:
            window = _decode_window(
                flat[position : position + chunk],
                key,
                key_fst,
                acceptor.with_start(start),
                open_end=not last,
            )
        except UnsegmentablePosition as e:
            offset = position + e.position
            low = max(0, offset - CONTEXT_WIDTH)
            raise UnsegmentablePosition(
                offset, flat[low : offset + CONTEXT_WIDTH]
            ) from e
        committed, length = [], 0
        for segment in window.segments:
            if not last and committed and length + len(segment) > keep:
                break
            committed.append(segment)
            length += len(segment)
        if not committed:
            raise DecodingError(
                f"Window at symbol {position} produced no segment to commit."
            )
        for segment in committed:
            written = plaintext_tokens(key, segment)
            tokens.extend(written)
            history.extend(written)
        segments.extend(committed)
        position += length
        logger.debug(f"Committed {len(committed)} elements up to {position}.")

    segmentation = Segmentation(segments)
    check_segmentation(segmentation, cipher)

    return Decoded("".join(tokens), segmentation, -lm.score(tokens))
