class NumsegError(Exception):
    """ Base class of every error raised by numseg."""


class ValidationError(NumsegError):
    """ Raise when an input file, parameter or config is invalid."""


class DecodingError(NumsegError):
    """ Raise when a valid input cannot be segmented or decoded."""


class InvalidParameter(ValidationError):
    """ Raise when a parameter is outside of its allowed range."""
