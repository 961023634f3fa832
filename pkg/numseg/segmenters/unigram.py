""" Unigram language model segmentation
"""
import collections
import logging
import math

from codetiming import Timer

import numseg.constants as const
from numseg.exceptions import InvalidParameter

from .base import Segmenter
from .exceptions import UncoveredSymbol

logger = logging.getLogger(__name__)

NEG_INF = float("-inf")
# Relative slack allowed on the EM likelihood trace before warning
LIKELIHOOD_TOLERANCE = 1e-9


def log_add(a, b):
    """ log(exp(a) + exp(b)) without overflow."""
    if a == NEG_INF:
        return b
    if b == NEG_INF:
        return a
    if a < b:
        a, b = b, a

    return a + math.log1p(math.exp(b - a))


class UnigramModel:
    """Piece to log-probability table.

    Attributes:
        pieces (dict): piece -> natural log probability.
        max_piece_len (int): piece length cap used in training, None for
            unlimited.
        trace (list[list[float]]): corpus log-likelihood of every E-step,
            grouped per EM round.
    """

    def __init__(self, pieces, max_piece_len=None, trace=None):
        self.pieces = dict(pieces)
        self.max_piece_len = max_piece_len
        self.trace = trace or []
        self._longest = max((len(p) for p in self.pieces), default=0)

    @classmethod
    def from_probabilities(cls, probabilities, max_piece_len=None, trace=None):
        """ Build a model from unnormalized piece weights."""
        total = sum(probabilities.values())
        pieces = {
            piece: math.log(weight / total)
            for piece, weight in probabilities.items()
            if weight > 0
        }

        return cls(pieces, max_piece_len, trace)

    def __len__(self):
        return len(self.pieces)

    def __contains__(self, piece):
        return piece in self.pieces

    def total_probability(self):
        return math.fsum(math.exp(logp) for logp in self.pieces.values())

    def _matches(self, span, start):
        """ (piece, logp) pairs of pieces starting at span[start]."""
        stop = min(len(span), start + self._longest)
        for end in range(start + 1, stop + 1):
            piece = span[start:end]
            if piece in self.pieces:
                yield piece, self.pieces[piece]

    def viterbi(self, span, exclude=None):
        """Most probable segmentation of a span.

        Ties go to fewer segments, then to the lexicographically smallest
        first segment.

        Args:
            span (str): symbols to segment.
            exclude (str): a piece that may not be used.

        Returns:
            tuple: (log probability, list of pieces).

        Raises:
            UncoveredSymbol: if no segmentation exists.
        """
        n = len(span)
        # best[i] = (-logp, n_segments, first piece) of span[i:]
        best = [None] * (n + 1)
        best[n] = (-0.0, 0, "")
        for i in range(n - 1, -1, -1):
            for piece, logp in self._matches(span, i):
                if piece == exclude:
                    continue
                rest = best[i + len(piece)]
                if rest is None:
                    continue
                candidate = (rest[0] - logp, rest[1] + 1, piece)
                if best[i] is None or candidate < best[i]:
                    best[i] = candidate
        if best[0] is None:
            position = next(i for i in range(n) if best[i] is None)
            raise UncoveredSymbol(
                f"No piece covers symbol {span[position]!r} at position "
                f"{position} of span {span!r}."
            )
        pieces, i = [], 0
        while i < n:
            pieces.append(best[i][2])
            i += len(best[i][2])

        return -best[0][0], pieces

    def forward_backward(self, span):
        """Expected piece counts over all segmentations of a span.

        Args:
            span (str): symbols to segment.

        Returns:
            tuple: (log marginal likelihood, Counter piece -> expected count).
        """
        n = len(span)
        alpha = [NEG_INF] * (n + 1)
        alpha[0] = 0.0
        for i in range(n):
            if alpha[i] == NEG_INF:
                continue
            for piece, logp in self._matches(span, i):
                j = i + len(piece)
                alpha[j] = log_add(alpha[j], alpha[i] + logp)
        beta = [NEG_INF] * (n + 1)
        beta[n] = 0.0
        for i in range(n - 1, -1, -1):
            for piece, logp in self._matches(span, i):
                beta[i] = log_add(beta[i], logp + beta[i + len(piece)])

        z = alpha[n]
        counts = collections.Counter()
        if z == NEG_INF:
            return z, counts
        for i in range(n):
            if alpha[i] == NEG_INF:
                continue
            for piece, logp in self._matches(span, i):
                posterior = alpha[i] + logp + beta[i + len(piece)] - z
                counts[piece] += math.exp(posterior)

        return z, counts


def _weighted_spans(corpus):
    spans = collections.Counter(corpus.spans())
    spans.pop("", None)
    if not spans:
        raise InvalidParameter(
            "Cannot train a unigram model on an empty corpus."
        )

    return spans


def seed_pieces(spans, max_piece_len, cap=None):
    """Initial piece frequencies.

    Multi-symbol substrings of the spans that occur at least twice, ranked by
    frequency times length and capped, plus every single symbol of the spans.

    Args:
        spans (Counter): span -> weight.
        max_piece_len (int): longest seed piece.
        cap (int): number of multi-symbol seeds kept, None for all.

    Returns:
        dict: piece -> frequency.
    """
    substrings = collections.Counter()
    singles = collections.Counter()
    for span, weight in spans.items():
        for i in range(len(span)):
            singles[span[i]] += weight
            for j in range(i + 2, min(len(span), i + max_piece_len) + 1):
                substrings[span[i:j]] += weight
    ranked = sorted(
        ((p, c) for p, c in substrings.items() if c >= 2),
        key=lambda item: (-item[1] * len(item[0]), item[0]),
    )
    if cap is not None:
        ranked = ranked[:cap]
    seeds = dict(ranked)
    seeds.update(singles)

    return seeds


def _expectation(model, spans):
    """ Corpus log-likelihood and expected piece counts under model."""
    likelihood = 0.0
    expected = collections.Counter()
    for span, weight in spans.items():
        z, counts = model.forward_backward(span)
        likelihood += weight * z
        for piece, count in counts.items():
            expected[piece] += weight * count

    return likelihood, expected


def em_round(model, spans, em_iters):
    """Run EM iterations, then drop pieces with low expected counts.

    Args:
        model (UnigramModel): current model.
        spans (Counter): span -> weight.
        em_iters (int): number of E/M iterations.

    Returns:
        UnigramModel: the re-estimated model with one more trace round.
    """
    trace = []
    for _ in range(em_iters):
        likelihood, expected = _expectation(model, spans)
        if trace:
            slack = LIKELIHOOD_TOLERANCE * abs(trace[-1])
            if likelihood < trace[-1] - slack:
                logger.warning(
                    f"EM likelihood decreased from {trace[-1]:.6f} to "
                    f"{likelihood:.6f}."
                )
        trace.append(likelihood)
        model = UnigramModel.from_probabilities(
            expected, model.max_piece_len, model.trace
        )
    kept = {
        piece: count
        for piece, count in expected.items()
        if count >= const.UNIGRAM_MIN_EXPECTED_COUNT or len(piece) == 1
    }
    logger.debug(
        f"EM round kept {len(kept)} of {len(expected)} pieces, likelihood "
        f"{trace[-1]:.4f}."
    )

    return UnigramModel.from_probabilities(
        kept, model.max_piece_len, model.trace + [trace]
    )


def prune(model, spans, target_size, prune_fraction):
    """Drop the multi-symbol pieces whose removal costs the least likelihood.

    The loss of a piece is its Viterbi usage count times the log probability
    lost by segmenting the piece with the remaining pieces instead. Ties go
    to the lexicographically smallest piece.

    Args:
        model (UnigramModel): current model.
        spans (Counter): span -> weight.
        target_size (int): size the model should not shrink below.
        prune_fraction (float): share of pieces removed per call.

    Returns:
        UnigramModel: the pruned, renormalized model, or the same model when
        nothing can be pruned.
    """
    usage = collections.Counter()
    for span, weight in spans.items():
        for piece in model.viterbi(span)[1]:
            usage[piece] += weight
    losses = []
    for piece, logp in model.pieces.items():
        if len(piece) == 1:
            continue
        loss = 0.0
        if usage[piece]:
            try:
                alternative, _ = model.viterbi(piece, exclude=piece)
                loss = usage[piece] * (logp - alternative)
            except UncoveredSymbol:
                loss = math.inf
        losses.append((loss, piece))
    if not losses:
        return model
    losses.sort()
    new_size = max(target_size, int(len(model) * (1 - prune_fraction)))
    n_removed = min(len(losses), max(1, len(model) - new_size))
    removed = {piece for _, piece in losses[:n_removed]}
    logger.debug(f"Pruning {n_removed} pieces, lowest loss {losses[0][0]:.4f}.")

    return UnigramModel.from_probabilities(
        {
            piece: math.exp(logp)
            for piece, logp in model.pieces.items()
            if piece not in removed
        },
        model.max_piece_len,
        model.trace,
    )


def _initial_model(spans, max_piece_len, cap):
    seed_len = max_piece_len or const.UNIGRAM_MAX_SEED_PIECE_LEN
    seeds = seed_pieces(spans, seed_len, cap)
    logger.debug(f"Seeded {len(seeds)} pieces.")

    return UnigramModel.from_probabilities(seeds, max_piece_len)


@Timer(name="unigram_train", text=const.TIMING_TEXT, logger=logging.debug)
def unigram_train(
    corpus,
    vocab_size=const.DEFAULT_VOCAB_SIZE,
    max_piece_len=None,
    seed_multiplier=const.UNIGRAM_SEED_MULTIPLIER,
    em_iters=const.UNIGRAM_EM_ITERS,
    prune_fraction=const.UNIGRAM_PRUNE_FRACTION,
):
    """Train a unigram segmentation model with EM and pruning.

    Args:
        corpus (CipherText): training ciphertext.
        vocab_size (int): target number of pieces.
        max_piece_len (int): longest piece, None for unlimited.
        seed_multiplier (int): seed vocabulary is capped at
            seed_multiplier * vocab_size multi-symbol pieces.
        em_iters (int): EM iterations per round.
        prune_fraction (float): share of pieces pruned between rounds.

    Returns:
        UnigramModel: model covering every alphabet symbol.

    Raises:
        InvalidParameter: on an empty corpus or parameters out of range.
    """
    if vocab_size < 1 or em_iters < 1 or not 0 < prune_fraction < 1:
        raise InvalidParameter(
            f"Invalid unigram parameters: vocab_size={vocab_size}, "
            f"em_iters={em_iters}, prune_fraction={prune_fraction}."
        )
    spans = _weighted_spans(corpus)
    model = _initial_model(spans, max_piece_len, seed_multiplier * vocab_size)
    while True:
        model = em_round(model, spans, em_iters)
        if len(model) <= vocab_size:
            break
        pruned = prune(model, spans, vocab_size, prune_fraction)
        if len(pruned) == len(model):
            break
        model = pruned

    return _cover_alphabet(model, corpus.alphabet)


def _cover_alphabet(model, alphabet):
    """ Give alphabet symbols absent from the corpus a small probability."""
    missing = [symbol for symbol in alphabet if symbol not in model]
    if not missing:
        return model
    weights = {p: math.exp(logp) for p, logp in model.pieces.items()}
    floor = min(weights.values()) / 10
    weights.update({symbol: floor for symbol in missing})

    return UnigramModel.from_probabilities(
        weights, model.max_piece_len, model.trace
    )


def estimate_vocab_size(
    corpus,
    max_piece_len=2,
    em_iters=const.UNIGRAM_EM_ITERS,
):
    """Largest vocabulary the unigram trainer supports on a corpus.

    Seeds every repeated substring, runs one EM round and counts the pieces
    whose expected count survives the threshold.

    Args:
        corpus (CipherText): training ciphertext.
        max_piece_len (int): longest piece, None for unlimited.
        em_iters (int): EM iterations of the round.

    Returns:
        int: number of surviving pieces.
    """
    spans = _weighted_spans(corpus)
    model = _initial_model(spans, max_piece_len, None)
    model = em_round(model, spans, em_iters)

    return len(model)


def unigram_segment(cipher, model):
    """Segment a ciphertext with Viterbi under a unigram model.

    Args:
        cipher (CipherText): the ciphertext.
        model (UnigramModel): trained model.

    Returns:
        Segmentation: segments joining to cipher.flat.
    """
    return UnigramSegmenter.from_model(model).segment(cipher)


class UnigramSegmenter(Segmenter, algo="unigram"):
    """ Unigram language model segmenter."""

    def __init__(
        self,
        vocab_size=const.DEFAULT_VOCAB_SIZE,
        max_piece_len=None,
        seed_multiplier=const.UNIGRAM_SEED_MULTIPLIER,
        em_iters=const.UNIGRAM_EM_ITERS,
        prune_fraction=const.UNIGRAM_PRUNE_FRACTION,
    ):
        self.vocab_size = vocab_size
        self.max_piece_len = max_piece_len
        self.seed_multiplier = seed_multiplier
        self.em_iters = em_iters
        self.prune_fraction = prune_fraction
        self.model = None

    @classmethod
    def from_model(cls, model):
        segmenter = cls(
            vocab_size=len(model), max_piece_len=model.max_piece_len
        )
        segmenter.model = model

        return segmenter

    @classmethod
    def from_document(cls, document):
        segmenter = cls(**document["params"])
        segmenter.model = UnigramModel(
            document["pieces"], segmenter.max_piece_len
        )

        return segmenter

    def train(self, corpus):
        self.model = unigram_train(
            corpus,
            vocab_size=self.vocab_size,
            max_piece_len=self.max_piece_len,
            seed_multiplier=self.seed_multiplier,
            em_iters=self.em_iters,
            prune_fraction=self.prune_fraction,
        )
        logger.info(f"Trained unigram model with {len(self.model)} pieces.")

        return self

    def params(self):
        return {
            "vocab_size": self.vocab_size,
            "max_piece_len": self.max_piece_len,
            "seed_multiplier": self.seed_multiplier,
            "em_iters": self.em_iters,
            "prune_fraction": self.prune_fraction,
        }

    def payload(self):
        return {"pieces": dict(sorted(self.model.pieces.items()))}

    @property
    def vocabulary(self):
        if self.model is None:
            return frozenset()
        return frozenset(self.model.pieces)

    @property
    def diagnostics(self):
        if self.model is None:
            return {}
        return {
            "iterations": sum(len(round_) for round_ in self.model.trace),
            "likelihood_trace": self.model.trace,
        }

    def segment_span(self, span):
        return self.model.viterbi(span)[1]
