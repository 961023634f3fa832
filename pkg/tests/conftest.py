from pathlib import Path

import pytest

from numseg.ciphers.core import (
    CipherKey,
    CipherText,
    KeyEntry,
    letter,
    nomenclature,
    null,
)
from numseg.lm.charlm import lm_train


@pytest.fixture
def mock_data_dir():
    parent_dir = Path(__file__).parent.absolute()
    mock_data_dir = parent_dir / "mock_data"

    return mock_data_dir


def _read_corpus(name, keep_spaces=False):
    path = Path(__file__).parent / "mock_data" / name
    lines = []
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = "".join(c for c in raw.lower() if c.isalpha() or c == " ")
        if not keep_spaces:
            line = line.replace(" ", "")
        if line.strip():
            lines.append(" ".join(line.split()))

    return "\n".join(lines)


@pytest.fixture(scope="session")
def english_text():
    return _read_corpus("english.txt", keep_spaces=True)


@pytest.fixture(scope="session")
def heldout_text():
    return _read_corpus("english_heldout.txt", keep_spaces=True)


@pytest.fixture(scope="session")
def english_lm():
    return lm_train(_read_corpus("english.txt"), order=5)


@pytest.fixture
def and_key():
    return CipherKey(
        [
            KeyEntry("2", letter("a")),
            KeyEntry("22", letter("n")),
            KeyEntry("8", letter("d")),
        ]
    )


@pytest.fixture
def mixed_key():
    return CipherKey(
        [
            KeyEntry("11", letter("t")),
            KeyEntry("12", letter("h")),
            KeyEntry("13", letter("e")),
            KeyEntry("2", letter("a")),
            KeyEntry("30", null()),
            KeyEntry("44", nomenclature("rome")),
        ]
    )


@pytest.fixture
def overlapping_sevens():
    """Spaced cipher where 77 outnumbers 17 and 71 but they share digits."""
    words = ["77"] * 8 + ["17"] * 4 + ["71"] * 4 + ["65"] * 3
    for element in ("23", "48", "90", "32", "84", "09", "20", "43"):
        words += [element] * 6

    return CipherText([" ".join(words)])
