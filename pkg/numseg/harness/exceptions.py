from numseg.exceptions import ValidationError


class ConfigError(ValidationError):
    """ Raise when an experiment config or one of its files is invalid."""

    def __init__(self, message, file=None, line=None):
        self.file = file
        self.line = line
        location = file or "<config>"
        if line is not None:
            location = f"{location}:{line}"
        super().__init__(f"{location}: {message}")
