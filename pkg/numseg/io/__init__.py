from .formats import (
    ParsedCipher,
    parse_cipher_file,
    parse_key_file,
    parse_segmentation_file,
    serialize_cipher,
    serialize_key,
    serialize_segmentation,
)

__all__ = [
    "ParsedCipher",
    "parse_cipher_file",
    "parse_key_file",
    "parse_segmentation_file",
    "serialize_cipher",
    "serialize_key",
    "serialize_segmentation",
]
