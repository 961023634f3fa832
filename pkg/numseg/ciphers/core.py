""" Shared data model for ciphers, keys and segmentations
"""
import collections
import logging
from enum import Enum

import numseg.constants as const

from .exceptions import AlphabetError, DuplicateElement, SegmentationMismatch

logger = logging.getLogger(__name__)

WORD_SEPARATOR = " "


class CipherAlphabet:
    """Ordered set of single-character cipher symbols.

    Attributes:
        symbols (str): the symbols in declaration order.

    Examples:
        >>> alphabet = CipherAlphabet("0123456789.")
        >>> "." in alphabet
        True
        >>> len(alphabet)
        11
    """

    def __init__(self, symbols=const.DEFAULT_ALPHABET):
        """ Initialize CipherAlphabet

        Args:
            symbols (str or iterable of str): single-character symbols.

        Raises:
            AlphabetError: if the alphabet is empty, has duplicates or a
                symbol longer than one character.
        """
        symbols = tuple(symbols)
        if not symbols:
            raise AlphabetError("A cipher alphabet needs at least one symbol.")
        for symbol in symbols:
            if len(symbol) != 1 or symbol.isspace():
                raise AlphabetError(
                    f"Alphabet symbol {symbol!r} is not a single "
                    f"non-space character."
                )
        if len(set(symbols)) != len(symbols):
            raise AlphabetError(f"Alphabet {symbols} has duplicate symbols.")
        self.symbols = "".join(symbols)
        self._members = frozenset(symbols)

    def __contains__(self, symbol):
        return symbol in self._members

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __eq__(self, other):
        return (
            isinstance(other, CipherAlphabet) and self.symbols == other.symbols
        )

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"CipherAlphabet({self.symbols!r})"

    def check(self, text, line=None, allow_spaces=False):
        """Verify that every character of text is an alphabet symbol.

        Args:
            text (str): text to check.
            line (int): 1-based line number reported in errors.
            allow_spaces (bool): accept whitespace inside text.

        Raises:
            AlphabetError: at the first character outside the alphabet.
        """
        for column, char in enumerate(text, start=1):
            if char in self._members:
                continue
            if allow_spaces and char.isspace():
                continue
            where = f"column {column}"
            if line:
                where = f"line {line}, {where}"
            raise AlphabetError(
                f"Symbol {char!r} at {where} is not in alphabet "
                f"{self.symbols!r}.",
                line=line,
                column=column,
            )


DIGITS = CipherAlphabet()


class CipherText:
    """Transcribed ciphertext.

    Lines hold cipher symbols and, for ciphers that keep word spaces, single
    spaces between words. Spaces and line breaks are hard boundaries for the
    key-free segmenters; `flat` drops both.

    Attributes:
        lines (tuple[str]): non-empty transcription lines.
        alphabet (CipherAlphabet): the declared alphabet.
        flat (str): concatenation of all symbols, without spaces.
    """

    def __init__(self, lines=(), alphabet=DIGITS):
        """
        Args:
            lines (iterable of str): transcription lines.
            alphabet (CipherAlphabet): declared alphabet.

        Raises:
            AlphabetError: if a line contains a symbol outside alphabet.
        """
        normalized = []
        for number, line in enumerate(lines, start=1):
            line = WORD_SEPARATOR.join(line.split())
            alphabet.check(line, line=number, allow_spaces=True)
            if line:
                normalized.append(line)
        self.lines = tuple(normalized)
        self.alphabet = alphabet
        self.flat = "".join(
            line.replace(WORD_SEPARATOR, "") for line in self.lines
        )

    @classmethod
    def from_flat(cls, flat, alphabet=DIGITS):
        """ Build a single-line ciphertext from a symbol string."""
        return cls([flat] if flat else [], alphabet)

    @property
    def has_word_spaces(self):
        return any(WORD_SEPARATOR in line for line in self.lines)

    def spans(self):
        """Boundary-delimited spans of the ciphertext.

        Returns:
            list[str]: words when the cipher keeps word spaces, otherwise
            lines.
        """
        spans = []
        for line in self.lines:
            spans.extend(line.split(WORD_SEPARATOR))

        return spans

    def line_symbol_counts(self):
        """ Number of cipher symbols on each line."""
        return [len(line.replace(WORD_SEPARATOR, "")) for line in self.lines]

    def __len__(self):
        return len(self.flat)

    def __eq__(self, other):
        return (
            isinstance(other, CipherText)
            and self.lines == other.lines
            and self.alphabet == other.alphabet
        )

    def __hash__(self):
        return hash((self.lines, self.alphabet))

    def __repr__(self):
        return f"CipherText(lines={len(self.lines)}, symbols={len(self.flat)})"


class Segmentation:
    """Ordered sequence of cipher elements covering a ciphertext.

    Two segmentations are equal when their segments are equal; the optional
    line map only controls serialization.

    Attributes:
        segments (tuple[str]): non-empty symbol strings.
        line_map (tuple[int]): number of segments on each line, or None.
    """

    def __init__(self, segments=(), line_map=None):
        segments = tuple(segments)
        for index, segment in enumerate(segments):
            if not segment:
                raise SegmentationMismatch(f"Segment {index} is empty.")
        if line_map is not None:
            line_map = tuple(count for count in line_map if count > 0)
            if sum(line_map) != len(segments):
                raise SegmentationMismatch(
                    f"Line map covers {sum(line_map)} segments, "
                    f"expected {len(segments)}."
                )
        self.segments = segments
        self.line_map = line_map

    @classmethod
    def from_lines(cls, lines):
        """ Build a segmentation from per-line segment lists."""
        lines = [list(line) for line in lines]
        segments = [segment for line in lines for segment in line]

        return cls(segments, line_map=[len(line) for line in lines])

    def join(self):
        return "".join(self.segments)

    @property
    def vocabulary(self):
        """ Distinct segments (element types)."""
        return frozenset(self.segments)

    def counts(self):
        """ Token count of every segment type."""
        return collections.Counter(self.segments)

    def lines(self):
        """Segments grouped per line.

        Returns:
            list[list[str]]: one list per line, a single list when the
            segmentation has no line map.
        """
        if self.line_map is None:
            return [list(self.segments)] if self.segments else []
        grouped, start = [], 0
        for count in self.line_map:
            grouped.append(list(self.segments[start : start + count]))
            start += count

        return grouped

    def validate(self, source):
        """ Check this segmentation against its source, see check_segmentation.
        """
        check_segmentation(self, source)

    def __len__(self):
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def __getitem__(self, index):
        return self.segments[index]

    def __eq__(self, other):
        return (
            isinstance(other, Segmentation) and self.segments == other.segments
        )

    def __hash__(self):
        return hash(self.segments)

    def __repr__(self):
        return f"Segmentation({' | '.join(self.segments)})"


def check_segmentation(segmentation, source):
    """Verify that segments concatenate to the source symbol stream.

    Args:
        segmentation (Segmentation): segmentation to verify.
        source (CipherText or str): ciphertext or its flat symbol string.

    Raises:
        SegmentationMismatch: if join(segments) differs from source.flat.
    """
    flat = source.flat if isinstance(source, CipherText) else source
    joined = segmentation.join()
    if joined != flat:
        position = next(
            (i for i, (a, b) in enumerate(zip(joined, flat)) if a != b),
            min(len(joined), len(flat)),
        )
        raise SegmentationMismatch(
            f"Segmentation diverges from the ciphertext at symbol {position} "
            f"({len(joined)} segmented vs {len(flat)} source symbols)."
        )


class UnitKind(Enum):
    LETTER = "letter"
    NOMENCLATURE = "nomenclature"
    NULL = "null"


PlainUnit = collections.namedtuple("PlainUnit", "kind text")
KeyEntry = collections.namedtuple("KeyEntry", "element target")


def letter(text):
    """ Plaintext unit for a regular element (letter or syllable)."""
    return PlainUnit(UnitKind.LETTER, text)


def nomenclature(label=""):
    """ Plaintext unit for a nomenclature element with an optional label."""
    return PlainUnit(UnitKind.NOMENCLATURE, label)


def null():
    """ Plaintext unit for a null element."""
    return PlainUnit(UnitKind.NULL, "")


def is_prefix_free(elements):
    """Check that no element is a proper prefix of another.

    After lexicographic sorting an element that prefixes another also
    prefixes its immediate successor, so adjacent pairs suffice.

    Args:
        elements (iterable of str): unique cipher elements.

    Returns:
        bool: True if the element set is prefix-free.
    """
    ordered = sorted(elements)
    for current, following in zip(ordered, ordered[1:]):
        if following.startswith(current):
            return False

    return True


class CipherKey:
    """Substitution table between cipher elements and plaintext units.

    Homophony is allowed: several elements may share the same letter.

    Attributes:
        entries (tuple[KeyEntry]): key entries in declaration order.
        alphabet (CipherAlphabet): alphabet of the cipher elements.
        deterministic (bool): True if the element set is prefix-free, which
            guarantees a unique segmentation of any ciphertext.

    Examples:
        >>> key = CipherKey([KeyEntry("2", letter("a")),
        ...                  KeyEntry("22", letter("n")),
        ...                  KeyEntry("8", letter("d"))])
        >>> key.deterministic
        False
        >>> key.apply(["2", "22", "8"])
        'and'
    """

    def __init__(self, entries, alphabet=DIGITS):
        """
        Args:
            entries (iterable of KeyEntry): key entries.
            alphabet (CipherAlphabet): alphabet of the cipher elements.

        Raises:
            DuplicateElement: if an element is defined twice.
            AlphabetError: if an element is empty or uses other symbols.
        """
        entries = tuple(KeyEntry(*entry) for entry in entries)
        targets = {}
        for entry in entries:
            if not entry.element:
                raise AlphabetError("Key elements cannot be empty.")
            alphabet.check(entry.element)
            if entry.element in targets:
                raise DuplicateElement(
                    f"Element {entry.element!r} is defined more than once."
                )
            targets[entry.element] = entry.target
        self.entries = entries
        self.alphabet = alphabet
        self._targets = targets
        self.deterministic = is_prefix_free(targets)

    @property
    def elements(self):
        return tuple(entry.element for entry in self.entries)

    @property
    def max_element_len(self):
        return max((len(e) for e in self._targets), default=0)

    def target(self, element):
        """ Plaintext unit of an element."""
        return self._targets[element]

    def homophones(self, text):
        """ Elements enciphering the plaintext letter(s) text."""
        return tuple(
            entry.element
            for entry in self.entries
            if entry.target.kind == UnitKind.LETTER
            and entry.target.text == text
        )

    def letters(self):
        """ Distinct plaintext characters produced by regular elements."""
        return sorted(
            {
                char
                for entry in self.entries
                if entry.target.kind == UnitKind.LETTER
                for char in entry.target.text
            }
        )

    def apply(self, segments, nomenclature_labels=False):
        """Decipher a sequence of elements.

        Args:
            segments (iterable of str): cipher elements.
            nomenclature_labels (bool): emit nomenclature labels instead of
                placeholders when a label is known.

        Returns:
            str: the plaintext; nulls produce nothing and nomenclature
            elements produce a `⟨NOM:element⟩` placeholder.

        Raises:
            SegmentationMismatch: if a segment is not a key element.
        """
        pieces = []
        for segment in segments:
            if segment not in self._targets:
                raise SegmentationMismatch(
                    f"Segment {segment!r} is not an element of the key."
                )
            pieces.append(self.render(segment, nomenclature_labels))

        return "".join(pieces)

    def render(self, element, nomenclature_labels=False):
        """ Plaintext text of one element, see apply."""
        unit = self._targets[element]
        if unit.kind == UnitKind.NULL:
            return ""
        if unit.kind == UnitKind.NOMENCLATURE:
            if nomenclature_labels and unit.text:
                return unit.text
            return const.NOMENCLATURE_PLACEHOLDER.format(element)

        return unit.text

    def __len__(self):
        return len(self.entries)

    def __contains__(self, element):
        return element in self._targets

    def __eq__(self, other):
        return (
            isinstance(other, CipherKey)
            and self.entries == other.entries
            and self.alphabet == other.alphabet
        )

    def __hash__(self):
        return hash((self.entries, self.alphabet))

    def __repr__(self):
        return (
            f"CipherKey(entries={len(self.entries)}, "
            f"deterministic={self.deterministic})"
        )
