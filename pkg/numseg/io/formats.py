""" Parsers and serializers for key, cipher, segmentation and model files
"""
import collections
import json
import logging

import numseg.constants as const
from numseg.ciphers.core import (
    DIGITS,
    WORD_SEPARATOR,
    CipherAlphabet,
    CipherKey,
    CipherText,
    KeyEntry,
    Segmentation,
    UnitKind,
    letter,
    nomenclature,
    null,
)
from numseg.ciphers.exceptions import KeyFormatError

from .exceptions import EncodingError, ModelFormatError, VersionError

logger = logging.getLogger(__name__)

ParsedCipher = collections.namedtuple("ParsedCipher", "cipher gold")


def _decode(data):
    if not isinstance(data, bytes):
        return data
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise EncodingError(
            f"Invalid UTF-8 at byte {e.start}: {e.reason}."
        ) from e


def _content_lines(text, alphabet):
    """Split file text into content lines and resolve the alphabet header.

    Args:
        text (str): file content.
        alphabet (CipherAlphabet): alphabet used when no header is present.

    Returns:
        tuple: the alphabet and a list of (line number, line) pairs for
        non-blank, non-comment lines.
    """
    alphabet = alphabet or DIGITS
    lines = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith(const.ALPHABET_HEADER):
            symbols = stripped[len(const.ALPHABET_HEADER) :].strip()
            alphabet = CipherAlphabet(symbols)
            continue
        if stripped.startswith(const.COMMENT_PREFIX):
            continue
        lines.append((number, line.rstrip("\r\n")))

    return alphabet, lines


def parse_key_file(data, alphabet=None):
    """Parse a key file.

    Each content line holds `element<TAB>target`. A target of `@NOM` (or
    `@NOM:label`) marks a nomenclature element, `@NULL` a null, anything else
    is the plaintext text of a regular element.

    Args:
        data (bytes or str): UTF-8 key file content.
        alphabet (CipherAlphabet): cipher alphabet, digits by default. A
            `#alphabet` header line overrides it.

    Returns:
        CipherKey: the parsed key with its `deterministic` flag.

    Raises:
        KeyFormatError: if a line is not an element/target pair.
        DuplicateElement: if an element appears twice.
        AlphabetError: if an element uses symbols outside the alphabet.
    """
    alphabet, lines = _content_lines(_decode(data), alphabet)
    entries = []
    for number, line in lines:
        fields = line.split("\t") if "\t" in line else line.split()
        fields = [field.strip() for field in fields]
        if len(fields) != 2 or not all(fields):
            raise KeyFormatError(
                f"Line {number}: expected 'element<TAB>target', got {line!r}."
            )
        element, target = fields
        alphabet.check(element, line=number)
        entries.append(KeyEntry(element, _parse_target(target)))
    key = CipherKey(entries, alphabet)
    logger.debug(f"Parsed key: {key}")

    return key


def _parse_target(target):
    if target == const.NULL_TARGET:
        return null()
    if target == const.NOMENCLATURE_TARGET:
        return nomenclature()
    if target.startswith(const.NOMENCLATURE_TARGET + ":"):
        return nomenclature(target[len(const.NOMENCLATURE_TARGET) + 1 :])

    return letter(target)


def serialize_key(key):
    """ Render a key in the key file format, inverse of parse_key_file."""
    lines = []
    if key.alphabet != DIGITS:
        lines.append(f"{const.ALPHABET_HEADER} {key.alphabet.symbols}")
    for entry in key.entries:
        unit = entry.target
        if unit.kind == UnitKind.NULL:
            target = const.NULL_TARGET
        elif unit.kind == UnitKind.NOMENCLATURE:
            target = const.NOMENCLATURE_TARGET
            if unit.text:
                target = f"{target}:{unit.text}"
        else:
            target = unit.text
        lines.append(f"{entry.element}\t{target}")

    return "\n".join(lines) + "\n" if lines else ""


def parse_cipher_file(data, alphabet=None, word_spaces=False, gold=None):
    """Parse a cipher transcription.

    Two readings of spaces inside a line are supported. By default spaces are
    gold segment boundaries: they are removed from the ciphertext and returned
    as a gold Segmentation with one line map entry per line. With word_spaces
    they are word separators of a cipher that keeps word spaces and stay in
    the ciphertext.

    Args:
        data (bytes or str): UTF-8 cipher file content.
        alphabet (CipherAlphabet): cipher alphabet, digits by default. A
            `#alphabet` header line overrides it.
        word_spaces (bool): treat spaces as word separators.
        gold (bool): True reads every line as gold segments, so a line
            without spaces is one segment; None returns a gold Segmentation
            only when some line contains spaces.

    Returns:
        ParsedCipher: namedtuple of the CipherText and the gold Segmentation,
        None when the file carries no gold boundaries.

    Raises:
        EncodingError: if data is not valid UTF-8.
        AlphabetError: at the first symbol outside the alphabet, with line
            and column of the file.
    """
    alphabet, lines = _content_lines(_decode(data), alphabet)
    for number, line in lines:
        alphabet.check(line, line=number, allow_spaces=True)
    words = [line.split() for _, line in lines]
    if word_spaces:
        texts = [WORD_SEPARATOR.join(line) for line in words]
        return ParsedCipher(CipherText(texts, alphabet), None)

    segmentation = None
    if gold or (gold is None and any(len(line) > 1 for line in words)):
        segmentation = Segmentation.from_lines(words)
    cipher = CipherText(["".join(line) for line in words], alphabet)

    return ParsedCipher(cipher, segmentation)


def parse_segmentation_file(data, alphabet=None):
    """Parse a segmentation file written by serialize_segmentation.

    Every line is read as segments, so lines holding a single segment are
    kept.

    Args:
        data (bytes or str): UTF-8 file content.
        alphabet (CipherAlphabet): cipher alphabet, digits by default.

    Returns:
        Segmentation: segments with one line map entry per line.
    """
    return parse_cipher_file(data, alphabet, gold=True).gold


def serialize_segmentation(segmentation):
    """Render a segmentation as space-joined segments.

    Args:
        segmentation (Segmentation): segmentation to render.

    Returns:
        str: one line per line map entry, or a single line without a line
        map. No trailing newline.

    Examples:
        >>> serialize_segmentation(Segmentation(["2", "22", "8"]))
        '2 22 8'
    """
    return "\n".join(
        WORD_SEPARATOR.join(line) for line in segmentation.lines()
    )


def serialize_cipher(cipher):
    """ Render a ciphertext in the cipher file format."""
    lines = []
    if cipher.alphabet != DIGITS:
        lines.append(f"{const.ALPHABET_HEADER} {cipher.alphabet.symbols}")
    lines.extend(cipher.lines)

    return "\n".join(lines) + "\n" if lines else ""


def verify_version(json_data, version=const.MODEL_FILE_VERSION):
    """Verify model file version

    Args:
        json_data (dict): a json object loaded from a model file.
        version (str): string of the supported version.

    Raises:
        VersionError: If the version in the model file does not match the
            supported version.
    """
    loaded = json_data.get("version")
    if loaded != version:
        raise VersionError(
            f"Model file version {loaded!r} is not supported. "
            f"Expected version: {version}"
        )


def dump_model(algorithm, params, payload):
    """Render a model as versioned JSON text.

    Args:
        algorithm (str): algorithm tag.
        params (dict): training parameters.
        payload (dict): learned tables, e.g. merges or pieces.

    Returns:
        str: JSON text with sorted keys.
    """
    document = {
        "version": const.MODEL_FILE_VERSION,
        "algorithm": algorithm,
        "params": params,
    }
    document.update(payload)

    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False)


def load_model(data):
    """Parse versioned model JSON text.

    Args:
        data (bytes or str): model file content.

    Returns:
        dict: the model document.

    Raises:
        ModelFormatError: if the text is not a JSON object with an algorithm.
        VersionError: if the version is not supported.
    """
    try:
        document = json.loads(_decode(data))
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"Model file is not valid JSON: {e}") from e
    if not isinstance(document, dict) or "algorithm" not in document:
        raise ModelFormatError("Model file has no 'algorithm' field.")
    verify_version(document)

    return document
