import numpy as np
import pytest

from numseg.ciphers.core import (
    CipherAlphabet,
    CipherKey,
    CipherText,
    KeyEntry,
    Segmentation,
    check_segmentation,
    is_prefix_free,
    letter,
    nomenclature,
    null,
)
from numseg.ciphers.exceptions import (
    AlphabetError,
    DuplicateElement,
    SegmentationMismatch,
)


def test_alphabet_rejects_duplicates_and_spaces():
    with pytest.raises(AlphabetError):
        CipherAlphabet("0012")
    with pytest.raises(AlphabetError):
        CipherAlphabet("01 2")
    with pytest.raises(AlphabetError):
        CipherAlphabet("")


def test_alphabet_check_reports_line_and_column():
    alphabet = CipherAlphabet("0123456789")

    with pytest.raises(AlphabetError) as e:
        alphabet.check("12a4", line=3)

    assert e.value.line == 3
    assert e.value.column == 3


def test_alphabet_extension_with_dot():
    alphabet = CipherAlphabet("0123456789.")

    cipher = CipherText(["12.4"], alphabet)

    assert cipher.flat == "12.4"


def test_ciphertext_normalizes_spaces_and_drops_empty_lines():
    cipher = CipherText(["12  34 ", "", " 5"])

    assert cipher.lines == ("12 34", "5")
    assert cipher.flat == "12345"
    assert cipher.has_word_spaces
    assert cipher.spans() == ["12", "34", "5"]
    assert cipher.line_symbol_counts() == [4, 1]
    assert len(cipher) == 5


def test_empty_ciphertext():
    cipher = CipherText.from_flat("")

    assert cipher.flat == ""
    assert cipher.lines == ()
    assert len(cipher) == 0


def test_segmentation_lines_and_vocabulary():
    segmentation = Segmentation.from_lines([["2", "22"], ["8", "2"]])

    assert segmentation.line_map == (2, 2)
    assert segmentation.lines() == [["2", "22"], ["8", "2"]]
    assert segmentation.vocabulary == frozenset({"2", "22", "8"})
    assert segmentation.counts()["2"] == 2
    assert segmentation.join() == "22282"


def test_segmentation_equality_ignores_line_map():
    assert Segmentation(["2", "22"], [1, 1]) == Segmentation(["2", "22"])


def test_segmentation_rejects_empty_segment_and_bad_line_map():
    with pytest.raises(SegmentationMismatch):
        Segmentation(["2", ""])
    with pytest.raises(SegmentationMismatch):
        Segmentation(["2", "22"], [3])


def test_check_segmentation_detects_divergence():
    cipher = CipherText(["2228"])

    check_segmentation(Segmentation(["2", "22", "8"]), cipher)
    with pytest.raises(SegmentationMismatch):
        check_segmentation(Segmentation(["2", "22", "9"]), cipher)
    with pytest.raises(SegmentationMismatch):
        check_segmentation(Segmentation(["2", "22"]), cipher)


@pytest.mark.parametrize(
    "elements, expected",
    [
        (["2", "22", "8"], False),
        (["11", "12", "2", "30"], True),
        (["1", "23", "4"], True),
        (["10", "1"], False),
    ],
)
def test_is_prefix_free(elements, expected):
    assert is_prefix_free(elements) == expected


def test_key_determinism_flag(and_key, mixed_key):
    assert not and_key.deterministic
    assert mixed_key.deterministic


def _prefix_free_elements(rng, symbols="0123"):
    candidates = [
        "".join(rng.choice(list(symbols), size=length))
        for length in rng.integers(1, 4, size=12)
    ]
    chosen = []
    for candidate in candidates:
        if not any(
            a.startswith(candidate) or candidate.startswith(a) for a in chosen
        ):
            chosen.append(candidate)

    return chosen


def _all_segmentations(flat, elements):
    if not flat:
        return [[]]
    readings = []
    for element in elements:
        if flat.startswith(element):
            for rest in _all_segmentations(flat[len(element) :], elements):
                readings.append([element] + rest)

    return readings


def test_prefix_free_keys_admit_exactly_one_segmentation():
    rng = np.random.default_rng(11)
    for _ in range(200):
        elements = _prefix_free_elements(rng)
        key = CipherKey(
            [KeyEntry(e, letter("a")) for e in elements],
            CipherAlphabet("0123"),
        )
        chosen, flat = [], ""
        while True:
            element = elements[int(rng.integers(len(elements)))]
            if len(flat) + len(element) > 20:
                break
            chosen.append(element)
            flat += element

        readings = _all_segmentations(flat, elements)

        assert key.deterministic
        assert readings == [chosen]




def test_key_rejects_duplicate_element():
    with pytest.raises(DuplicateElement):
        CipherKey([KeyEntry("2", letter("a")), KeyEntry("2", letter("b"))])


def test_key_rejects_foreign_element():
    with pytest.raises(AlphabetError):
        CipherKey([KeyEntry("2a", letter("a"))])


def test_key_apply_renders_nulls_and_nomenclature(mixed_key):
    segments = ["11", "12", "30", "13", "44"]

    assert mixed_key.apply(segments) == "the⟨NOM:44⟩"
    assert mixed_key.apply(segments, nomenclature_labels=True) == "therome"


def test_key_apply_rejects_unknown_segment(and_key):
    with pytest.raises(SegmentationMismatch):
        and_key.apply(["2", "9"])


def test_key_homophones_and_letters():
    key = CipherKey(
        [
            KeyEntry("1", letter("a")),
            KeyEntry("23", letter("a")),
            KeyEntry("4", letter("b")),
            KeyEntry("5", null()),
            KeyEntry("67", nomenclature()),
        ]
    )

    assert key.homophones("a") == ("1", "23")
    assert key.letters() == ["a", "b"]
    assert key.max_element_len == 2
    assert key.apply(["67"], nomenclature_labels=True) == "⟨NOM:67⟩"
