from numseg.exceptions import ValidationError


class VersionError(ValidationError):
    """ Raise when a model file version does not match the supported one."""


class ModelFormatError(ValidationError):
    """ Raise when a model file is not valid JSON or misses a field."""


class EncodingError(ValidationError):
    """ Raise when a text file is not valid UTF-8."""
