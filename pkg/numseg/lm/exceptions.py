from numseg.exceptions import ValidationError


class EmptyCorpus(ValidationError):
    """ Raise when a language model is trained on text without characters."""


class ArpaFormatError(ValidationError):
    """ Raise when an ARPA file is malformed.

    Attributes:
        line (int): 1-based line number of the malformed line, if known.
    """

    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line
