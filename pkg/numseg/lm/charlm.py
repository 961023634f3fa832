""" Character n-gram language model with Witten-Bell smoothing
"""
import collections
import logging
import math
import re

from codetiming import Timer

import numseg.constants as const
from numseg.exceptions import InvalidParameter
from numseg.fst.wfst import PHI, SymbolTable, Wfst

from .exceptions import EmptyCorpus

logger = logging.getLogger(__name__)

_TOKEN_PATTERN = re.compile(f"{const.NOMENCLATURE_PATTERN}|.", re.DOTALL)


def tokenize(text):
    """Split plaintext into LM tokens.

    Every character is a token, except nomenclature placeholders which are a
    single token each.

    Args:
        text (str or sequence of str): plaintext, or tokens already split.

    Returns:
        list[str]: the tokens.
    """
    if not isinstance(text, str):
        return list(text)
    return _TOKEN_PATTERN.findall(text)


class CharNgramLm:
    """Backoff character n-gram model.

    Probabilities of seen n-grams are stored explicitly; everything else is
    reached through backoff weights of seen histories, down to a uniform
    distribution over the vocabulary for tokens never seen.

    Attributes:
        order (int): n-gram order.
        vocab (tuple[str]): predictable tokens, characters and EOS.
        probs (dict): n-gram tuple -> natural log probability.
        backoff (dict): history tuple -> natural log backoff weight.
    """

    def __init__(self, order, vocab, probs, backoff):
        if order < 1:
            raise InvalidParameter(f"LM order must be at least 1, got {order}.")
        self.order = order
        self.vocab = tuple(vocab)
        self.probs = dict(probs)
        self.backoff = dict(backoff)

    @property
    def uniform_log_prob(self):
        return -math.log(len(self.vocab))

    @property
    def start_history(self):
        return (const.BOS,) * (self.order - 1)

    def histories(self):
        """ Histories with observed continuations, the empty one included."""
        return {()} | set(self.backoff)

    def _truncate(self, history):
        if self.order == 1:
            return ()
        return tuple(history)[-(self.order - 1) :]

    def log_prob(self, token, history=()):
        """Conditional log probability of token after history.

        Args:
            token (str): predicted token.
            history (sequence of str): preceding tokens.

        Returns:
            float: natural log probability.
        """
        history = self._truncate(history)
        weight = 0.0
        while True:
            logp = self.probs.get(history + (token,))
            if logp is not None:
                return weight + logp
            if not history:
                return weight + self.uniform_log_prob
            weight += self.backoff.get(history, 0.0)
            history = history[1:]

    def distribution(self, history=()):
        """ Probability of every vocabulary token after history."""
        return {
            token: math.exp(self.log_prob(token, history))
            for token in self.vocab
        }

    def state_history(self, history):
        """ Longest suffix of history that has observed continuations."""
        history = self._truncate(history)
        while history and history not in self.backoff:
            history = history[1:]

        return history

    def score(self, text, start_history=None):
        """Sum of conditional log probabilities of the tokens of text.

        No end-of-sentence term is added, so scores of consecutive pieces
        add up when the history is carried over.

        Args:
            text (str or sequence of str): plaintext or tokens.
            start_history (sequence of str): context before text, sentence
                start padding by default.

        Returns:
            float: natural log probability, 0.0 for empty text.
        """
        history = list(
            self.start_history if start_history is None else start_history
        )
        total = 0.0
        for token in tokenize(text):
            total += self.log_prob(token, history)
            history.append(token)

        return total

    def perplexity(self, text):
        """ Per-token perplexity of text."""
        tokens = tokenize(text)
        if not tokens:
            return 1.0
        return math.exp(-self.score(tokens) / len(tokens))

    def __repr__(self):
        return (
            f"CharNgramLm(order={self.order}, vocab={len(self.vocab)}, "
            f"ngrams={len(self.probs)})"
        )


def _count_ngrams(lines, order):
    """ counts[k][history][token] for histories of length k."""
    counts = [
        collections.defaultdict(collections.Counter) for _ in range(order)
    ]
    padding = [const.BOS] * (order - 1)
    for line in lines:
        tokens = padding + list(line) + [const.EOS]
        for i in range(order - 1, len(tokens)):
            for k in range(order):
                counts[k][tuple(tokens[i - k : i])][tokens[i]] += 1

    return counts


@Timer(name="lm_train", text=const.TIMING_TEXT, logger=logging.info)
def lm_train(corpus, order=const.DEFAULT_LM_ORDER, alphabet=None):
    """Train a Witten-Bell smoothed character model.

    Each non-empty line is a sentence padded with order-1 start markers and
    closed by an end marker. For a seen history h with C continuations of T
    distinct types, a seen token c gets
    (C(h, c) + T * P(c | h')) / (C + T) and every other token backs off to
    h' with weight T / (C + T). The lowest order interpolates with a uniform
    distribution over the vocabulary.

    Args:
        corpus (str): training text, one sentence per line.
        order (int): n-gram order.
        alphabet (str): declared plaintext characters; all of them enter the
            vocabulary and other characters are rejected.

    Returns:
        CharNgramLm: the trained model.

    Raises:
        EmptyCorpus: if the corpus has no characters.
        InvalidParameter: on order < 1 or characters outside alphabet.
    """
    if order < 1:
        raise InvalidParameter(f"LM order must be at least 1, got {order}.")
    lines = [line for line in corpus.splitlines() if line]
    if not lines:
        raise EmptyCorpus("Cannot train a language model on an empty corpus.")
    chars = {char for line in lines for char in line}
    if alphabet is not None:
        foreign = sorted(chars - set(alphabet))
        if foreign:
            raise InvalidParameter(
                f"Corpus characters {foreign} are outside the plaintext "
                f"alphabet {alphabet!r}."
            )
        chars |= set(alphabet)
    vocab = sorted(chars) + [const.EOS]

    counts = _count_ngrams(lines, order)
    probs, backoff = {}, {}
    unigrams = counts[0][()]
    total, types = sum(unigrams.values()), len(unigrams)
    for token in vocab:
        probs[(token,)] = math.log(
            (unigrams[token] + types / len(vocab)) / (total + types)
        )
    lm = CharNgramLm(order, vocab, probs, backoff)
    for k in range(1, order):
        for history, continuations in sorted(counts[k].items()):
            total = sum(continuations.values())
            types = len(continuations)
            for token, count in continuations.items():
                lower = math.exp(lm.log_prob(token, history[1:]))
                probs[history + (token,)] = math.log(
                    (count + types * lower) / (total + types)
                )
            backoff[history] = math.log(types / (total + types))
        # lower orders must be complete before the next order reads them
        lm = CharNgramLm(order, vocab, probs, backoff)
    logger.info(
        f"Trained {lm} on {len(lines)} lines, "
        f"{sum(len(line) for line in lines)} characters."
    )

    return lm


def lm_score(lm, text, start_history=None):
    """ Log probability of text under lm, see CharNgramLm.score."""
    return lm.score(text, start_history)


def lm_to_acceptor(lm, extra_tokens=(), start_history=None):
    """Compile a language model into a weighted acceptor.

    States are the histories with observed continuations. Every seen n-gram
    becomes an arc weighted -log P to the longest known suffix of the
    extended history; every non-empty history has a failure arc (label PHI)
    weighted -log backoff to its one-shorter suffix. Failure arcs are taken
    only when no direct arc matches, so the path weight of a string equals
    minus its lm_score. All states are final with weight 0.

    Args:
        lm (CharNgramLm): the model.
        extra_tokens (iterable of str): tokens outside the vocabulary the
            acceptor must read, e.g. nomenclature placeholders. They get the
            uniform probability at the empty history.
        start_history (sequence of str): context of the start state.

    Returns:
        Wfst: the acceptor; state labels are the history tuples.
    """
    symbols = SymbolTable()
    for token in lm.vocab:
        if token != const.EOS:
            symbols.add(token)
    extra_tokens = [t for t in extra_tokens if t not in lm.vocab]
    for token in extra_tokens:
        symbols.add(token)

    acceptor = Wfst(symbols, symbols)
    histories = sorted(lm.histories(), key=lambda h: (len(h), h))
    state_of = {h: acceptor.add_state(label=h) for h in histories}
    for state in state_of.values():
        acceptor.set_final(state, 0.0)

    for ngram, logp in sorted(lm.probs.items()):
        token = ngram[-1]
        if token == const.EOS:
            continue
        history = ngram[:-1]
        if history:
            backed_off = lm.backoff[history] + lm.log_prob(token, history[1:])
            if logp < backed_off - 1e-12:
                logger.warning(
                    f"Direct arc {ngram} is costlier than its backoff path."
                )
        label = symbols.find(token)
        target = state_of[lm.state_history(ngram)]
        acceptor.add_arc(state_of[history], label, label, -logp, target)
    for history in histories:
        if history:
            acceptor.add_arc(
                state_of[history],
                PHI,
                PHI,
                -lm.backoff[history],
                state_of[history[1:]],
            )
    for token in extra_tokens:
        label = symbols.find(token)
        acceptor.add_arc(
            state_of[()], label, label, -lm.uniform_log_prob, state_of[()]
        )

    if start_history is None:
        start_history = lm.start_history
    acceptor.set_start(state_of[lm.state_history(start_history)])
    logger.debug(
        f"Compiled LM acceptor with {acceptor.num_states()} states and "
        f"{acceptor.num_arcs()} arcs."
    )

    return acceptor
