from numseg.exceptions import ValidationError


class AlphabetError(ValidationError):
    """ Raise when a symbol is outside of the declared cipher alphabet.

    Attributes:
        line (int): 1-based line number of the offending symbol, if known.
        column (int): 1-based column of the offending symbol, if known.
    """

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class DuplicateElement(ValidationError):
    """ Raise when a key defines the same cipher element twice."""


class KeyFormatError(ValidationError):
    """ Raise when a key file line is not an `element<TAB>target` pair."""


class SegmentationMismatch(ValidationError):
    """ Raise when the segments of a segmentation do not join to the source.
    """


class PoolExhausted(ValidationError):
    """ Raise when a key spec needs more elements than the pool holds."""


class MissingMapping(ValidationError):
    """ Raise when a plaintext character has no cipher element in the key.

    Attributes:
        char (str): the uncovered plaintext character.
    """

    def __init__(self, char):
        super().__init__(f"No cipher element enciphers {char!r}.")
        self.char = char


class InvalidKeySpec(ValidationError):
    """ Raise when a key spec has duplicate pool elements or bad counts."""
