import pytest

from numseg.ciphers.core import CipherAlphabet, CipherText
from numseg.exceptions import InvalidParameter
from numseg.segmenters import (
    BpeSegmenter,
    MergeVocabulary,
    bpe_segment,
    bpe_train,
    load_segmenter,
)
from numseg.segmenters.bpe import apply_merge, bpe_segment_span


@pytest.fixture
def sevens():
    return CipherText(["7777 77"], CipherAlphabet("7"))


def test_apply_merge_is_left_to_right_and_non_overlapping():
    assert apply_merge(tuple("777"), ("7", "7")) == ("77", "7")
    assert apply_merge(tuple("1717"), ("1", "7")) == ("17", "17")


def test_bpe_train_first_merge_is_most_frequent_pair(sevens):
    vocab = bpe_train(sevens, vocab_size=2)

    assert vocab.merges == (("7", "7"),)
    assert vocab.pieces == frozenset({"7", "77"})
    assert list(bpe_segment(sevens, vocab)) == ["77", "77", "77"]


def test_bpe_train_breaks_ties_lexicographically():
    corpus = CipherText(["1212 3434"])

    vocab = bpe_train(corpus, vocab_size=12)

    assert vocab.merges == (("1", "2"), ("3", "4"))


def test_bpe_train_alphabet_sized_vocab_learns_nothing():
    corpus = CipherText(["1212 3434"])

    vocab = bpe_train(corpus, vocab_size=10)

    assert vocab.merges == ()
    assert list(bpe_segment(corpus, vocab)) == list("12123434")


def test_bpe_train_rejects_vocab_smaller_than_alphabet():
    with pytest.raises(InvalidParameter):
        bpe_train(CipherText(["1212"]), vocab_size=5)


def test_bpe_piece_length_cap():
    corpus = CipherText(["1111 1111"])

    capped = bpe_train(corpus, vocab_size=20, max_piece_len=2)
    unlimited = bpe_train(corpus, vocab_size=20)

    assert capped.merges == (("1", "1"),)
    assert max(len(p) for p in capped.pieces) == 2
    assert unlimited.merges == (("1", "1"), ("11", "11"))
    assert "1111" in unlimited.pieces


def test_bpe_segment_replays_merges_in_rank_order():
    merges = (("7", "7"), ("6", "5"), ("1", "7"))
    vocab = MergeVocabulary(
        merges=merges,
        pieces=frozenset(set("0123456789") | {"77", "65", "17"}),
        max_piece_len=2,
    )

    assert bpe_segment_span("65177771", vocab) == ["65", "1", "77", "77", "1"]


def test_bpe_segmenter_stays_within_vocab_size():
    corpus = CipherText(["25422024 2542", "1225 4220"])
    segmenter = BpeSegmenter(vocab_size=13, max_piece_len=2)

    report = segmenter.run(corpus)

    assert len(report.vocabulary) <= 13
    assert all(len(p) <= 2 for p in report.vocabulary)
    assert report.segmentations[0].join() == corpus.flat
    assert report.diagnostics["iterations"] == len(
        segmenter.merge_vocabulary.merges
    )


def test_bpe_segmenter_model_file_round_trip():
    corpus = CipherText(["25422024 2542", "1225 4220"])
    segmenter = BpeSegmenter(vocab_size=14).train(corpus)

    restored = load_segmenter(segmenter.dumps())

    assert isinstance(restored, BpeSegmenter)
    assert restored.merge_vocabulary.merges == (
        segmenter.merge_vocabulary.merges
    )
    assert restored.vocabulary == segmenter.vocabulary
    assert restored.segment(corpus) == segmenter.segment(corpus)


def test_bpe_early_merge_hides_overlapping_pieces(overlapping_sevens):
    segmenter = BpeSegmenter(vocab_size=22, max_piece_len=2)

    segmenter.train(overlapping_sevens)

    merges = segmenter.merge_vocabulary.merges
    assert merges[0] == ("7", "7")
    assert {"17", "71", "77", "65"} <= segmenter.vocabulary
    assert segmenter.segment_span("65177771") == ["65", "1", "77", "77", "1"]
