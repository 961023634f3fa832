from numseg.exceptions import ValidationError


class EmptyReference(ValidationError):
    """ Raise when a metric is computed against an empty reference."""
