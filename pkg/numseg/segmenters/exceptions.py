from numseg.exceptions import ValidationError


class UnknownAlgorithm(ValidationError):
    """ Raise when no segmenter is registered under an algorithm name."""


class UncoveredSymbol(ValidationError):
    """ Raise when a span holds a symbol the model has no piece for."""
