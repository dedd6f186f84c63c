"""QA-LOCO: q-ary asymmetric lexicographically-ordered constrained codes for multi-level Flash."""

from .cardinality import CardinalityTable, get_table
from .codec import QaLocoCodec, codeword_of_index, decode_codeword, encode_message, index_of_codeword
from .errors import QaLocoError
from .levels import CodeParams
from .stream import SymbolStream, decode_stream, encode_stream

__all__ = [
    "CardinalityTable",
    "CodeParams",
    "QaLocoCodec",
    "QaLocoError",
    "SymbolStream",
    "codeword_of_index",
    "decode_codeword",
    "decode_stream",
    "encode_message",
    "encode_stream",
    "get_table",
    "index_of_codeword",
]
