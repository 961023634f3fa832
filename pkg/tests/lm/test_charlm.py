import math

import numpy as np
import pytest

import numseg.constants as const
from numseg.exceptions import InvalidParameter
from numseg.fst.wfst import Wfst, compose, shortest_path
from numseg.lm import lm_score, lm_to_acceptor, lm_train, tokenize
from numseg.lm.exceptions import EmptyCorpus

PLACEHOLDER = const.NOMENCLATURE_PLACEHOLDER.format("44")


def _linear_acceptor(tokens, symbols):
    machine = Wfst(symbols, symbols)
    state = machine.add_state()
    machine.set_start(state)
    for token in tokens:
        nextstate = machine.add_state()
        label = symbols.find(token)
        machine.add_arc(state, label, label, 0.0, nextstate)
        state = nextstate
    machine.set_final(state, 0.0)

    return machine


def _heldout_tokens(heldout_text, lm, n=80):
    flat = heldout_text.replace(" ", "").replace("\n", "")

    return [c for c in flat if c in lm.vocab][:n]


def test_tokenize_keeps_placeholders_whole():
    assert tokenize(f"ab{PLACEHOLDER}c") == ["a", "b", PLACEHOLDER, "c"]
    assert tokenize(["a", "b"]) == ["a", "b"]


def test_witten_bell_hand_computed():
    lm = lm_train("ab", order=2)

    # unigrams a, b, </s> each seen once with three types
    assert math.exp(lm.log_prob("a")) == pytest.approx(1 / 3)
    assert math.exp(lm.log_prob("a", [const.BOS])) == pytest.approx(2 / 3)
    assert math.exp(lm.log_prob("b", [const.BOS])) == pytest.approx(1 / 6)


def test_distributions_are_normalized(english_lm, heldout_text):
    tokens = _heldout_tokens(heldout_text, english_lm)
    histories = [(), tuple(english_lm.start_history)]
    histories += [tuple(tokens[i - 4 : i]) for i in range(4, len(tokens), 7)]
    histories.append(("q", "q", "q", "q"))

    for history in histories:
        total = sum(english_lm.distribution(history).values())
        assert total == pytest.approx(1.0, abs=1e-6)


def test_unknown_token_gets_backed_off_uniform_probability(english_lm):
    history = ("t", "h", "e")

    logp = english_lm.log_prob(PLACEHOLDER, history)

    assert logp < english_lm.uniform_log_prob
    assert english_lm.log_prob(PLACEHOLDER) == pytest.approx(
        english_lm.uniform_log_prob
    )


def test_score_adds_up_over_pieces(english_lm):
    text = list("whereverthey")

    whole = lm_score(english_lm, text)
    head = english_lm.score(text[:5])
    start = list(english_lm.start_history) + text[:5]
    tail = english_lm.score(text[5:], start_history=start)

    assert whole == pytest.approx(head + tail)


def test_acceptor_path_weight_equals_minus_score(english_lm, heldout_text):
    tokens = _heldout_tokens(heldout_text, english_lm) + [PLACEHOLDER]
    tokens += list("and")
    acceptor = lm_to_acceptor(english_lm, extra_tokens=[PLACEHOLDER])

    text = _linear_acceptor(tokens, acceptor.isymbols)
    path = shortest_path(compose(text, acceptor))

    assert path.olabels == tokens
    assert path.weight == pytest.approx(-english_lm.score(tokens), abs=1e-6)


def test_acceptor_agrees_with_score_on_random_strings(english_lm):
    acceptor = lm_to_acceptor(english_lm, extra_tokens=[PLACEHOLDER])
    tokens = [t for t in english_lm.vocab if t != const.EOS]
    tokens.append(PLACEHOLDER)
    rng = np.random.default_rng(31)
    for _ in range(1000):
        size = int(rng.integers(1, 13))
        text = [str(t) for t in rng.choice(tokens, size=size)]

        path = shortest_path(
            compose(_linear_acceptor(text, acceptor.isymbols), acceptor)
        )

        assert path.olabels == text
        expected = -lm_score(english_lm, text)
        assert path.weight == pytest.approx(expected, abs=1e-6)


def test_acceptor_start_history(english_lm):
    acceptor = lm_to_acceptor(english_lm, start_history=list("th"))
    tokens = list("ere")

    path = shortest_path(
        compose(_linear_acceptor(tokens, acceptor.isymbols), acceptor)
    )

    expected = english_lm.score(tokens, start_history=list("th"))
    assert path.weight == pytest.approx(-expected, abs=1e-6)


def test_perplexity_is_below_vocabulary_size(english_lm, heldout_text):
    tokens = _heldout_tokens(heldout_text, english_lm, n=400)

    perplexity = english_lm.perplexity(tokens)

    assert 1.0 < perplexity < len(english_lm.vocab)


def test_lm_train_errors():
    with pytest.raises(EmptyCorpus):
        lm_train("\n\n")
    with pytest.raises(InvalidParameter):
        lm_train("abc", order=0)
    with pytest.raises(InvalidParameter):
        lm_train("abc1", alphabet="abc")


def test_lm_train_alphabet_extends_vocab():
    lm = lm_train("ab", order=2, alphabet="abc")

    assert "c" in lm.vocab
    assert lm.log_prob("c") < lm.log_prob("a")
