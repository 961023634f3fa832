from .lattice import build_key_fst, build_segmentation_fst, element_token
from .wfst import (
    EPSILON,
    PHI,
    Arc,
    Path,
    SymbolTable,
    Wfst,
    compose,
    count_paths,
    enumerate_paths,
    random_path,
    shortest_path,
)

__all__ = [
    "EPSILON",
    "PHI",
    "Arc",
    "Path",
    "SymbolTable",
    "Wfst",
    "build_key_fst",
    "build_segmentation_fst",
    "compose",
    "count_paths",
    "element_token",
    "enumerate_paths",
    "random_path",
    "shortest_path",
]
