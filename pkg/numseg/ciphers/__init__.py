from .core import (
    DIGITS,
    CipherAlphabet,
    CipherKey,
    CipherText,
    KeyEntry,
    PlainUnit,
    Segmentation,
    UnitKind,
    check_segmentation,
    is_prefix_free,
)
from .synthetic import (
    GeneratedCipher,
    KeySpec,
    encipher,
    generate_batch,
    generate_cipher,
    generate_key,
    prepare_plaintext,
    reflow,
    truncate,
    truncate_series,
)

__all__ = [
    "DIGITS",
    "CipherAlphabet",
    "CipherKey",
    "CipherText",
    "GeneratedCipher",
    "KeyEntry",
    "KeySpec",
    "PlainUnit",
    "Segmentation",
    "UnitKind",
    "check_segmentation",
    "encipher",
    "generate_batch",
    "generate_cipher",
    "generate_key",
    "is_prefix_free",
    "prepare_plaintext",
    "reflow",
    "truncate",
    "truncate_series",
]
