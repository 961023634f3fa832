import pytest

from numseg.ciphers.core import CipherText
from numseg.io.exceptions import ModelFormatError
from numseg.segmenters import (
    MODELS,
    BpeSegmenter,
    FixedWidthSegmenter,
    Segmenter,
    UnigramSegmenter,
    create_model,
    create_segmenter,
    load_segmenter,
)
from numseg.segmenters.exceptions import UnknownAlgorithm


def test_create_segmenter():
    segmenter = create_segmenter("bpe", vocab_size=20)

    assert isinstance(segmenter, BpeSegmenter)
    assert segmenter.vocab_size == 20


def test_create_segmenter_unknown_algorithm():
    with pytest.raises(UnknownAlgorithm):
        create_segmenter("wordpiece")


def test_subclass_without_algo_is_rejected():
    with pytest.raises(NotImplementedError):

        class Anonymous(Segmenter):
            pass


@pytest.mark.parametrize(
    "name, segmenter_class, max_piece_len",
    [
        ("bpe", BpeSegmenter, None),
        ("bpe2", BpeSegmenter, 2),
        ("unigram", UnigramSegmenter, None),
        ("unigram2", UnigramSegmenter, 2),
    ],
)
def test_create_model_trainable(name, segmenter_class, max_piece_len):
    segmenter = create_model(name, vocab_size=36)

    assert isinstance(segmenter, segmenter_class)
    assert segmenter.max_piece_len == max_piece_len
    assert segmenter.vocab_size == 36


def test_create_model_baselines():
    assert create_model("1-dig").k == 1
    assert create_model("2-dig").k == 2
    assert set(MODELS) == {
        "1-dig",
        "2-dig",
        "bpe",
        "bpe2",
        "unigram",
        "unigram2",
    }


def test_create_model_unknown_name():
    with pytest.raises(UnknownAlgorithm):
        create_model("3-dig")


def test_load_segmenter_baseline():
    restored = load_segmenter(FixedWidthSegmenter(k=1).dumps())
    cipher = CipherText.from_flat("2228")

    assert isinstance(restored, FixedWidthSegmenter)
    assert list(restored.segment(cipher)) == ["2", "2", "2", "8"]


def test_load_segmenter_rejects_unknown_algorithm():
    with pytest.raises(UnknownAlgorithm):
        load_segmenter('{"version": "1", "algorithm": "x", "params": {}}')


def test_load_segmenter_rejects_garbage():
    with pytest.raises(ModelFormatError):
        load_segmenter("not json")
