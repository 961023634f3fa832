from .arpa import read_arpa, write_arpa
from .charlm import CharNgramLm, lm_score, lm_to_acceptor, lm_train, tokenize

__all__ = [
    "CharNgramLm",
    "lm_score",
    "lm_to_acceptor",
    "lm_train",
    "read_arpa",
    "tokenize",
    "write_arpa",
]
