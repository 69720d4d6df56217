"""Run-length compressed rank/select for strings over large alphabets."""

from .bitvec import PackedIntArray, PlainBitVector
from .predecessor import PredecessorIndex
from .elias_fano import EliasFanoBitVector
from .header import HeaderString, SymbolIndex
from .rle_string import RunLengthString
from .baseline import BcgprIndex
from .oracle import (
    NaiveSequence,
    count_strings_with_runs,
    enumerate_strings_with_runs,
    gen_instance,
)

__version__ = "0.1.0"

__all__ = [
    "BcgprIndex",
    "EliasFanoBitVector",
    "HeaderString",
    "NaiveSequence",
    "PackedIntArray",
    "PlainBitVector",
    "PredecessorIndex",
    "RunLengthString",
    "SymbolIndex",
    "count_strings_with_runs",
    "enumerate_strings_with_runs",
    "gen_instance",
    "__version__",
]
