from numseg.exceptions import DecodingError


class NoPath(DecodingError):
    """ Raise when a machine has no accepting path."""


class UnsegmentablePosition(DecodingError):
    """ Raise when no key element matches the cipher at some position.

    Attributes:
        position (int): 0-based offset into the cipher symbol stream.
        context (str): symbols around the position.
    """

    def __init__(self, position, context=""):
        super().__init__(
            f"No key element matches the ciphertext at symbol {position} "
            f"(context: {context!r})."
        )
        self.position = position
        self.context = context


class CyclicMachine(DecodingError):
    """ Raise when an operation needs an acyclic machine."""
