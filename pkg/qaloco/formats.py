"""Reading and writing symbol streams.

Text: one stream per line, levels as decimal integers separated by single
spaces, bridges inline.

Binary: a sequence of records, one per stream:

    b"QALS" | version 0x01 | q, m, x as u16 LE | codeword count as u64 LE | one level per byte
"""

from __future__ import annotations

import struct
from typing import Iterator, List, Sequence

from .errors import FramingError, InvalidLevelError, ParameterError, QaLocoError, at_line
from .levels import CodeParams, check_levels
from .stream import SymbolStream, stream_length

MAGIC = b"QALS"
VERSION = 1
_HEADER = struct.Struct("<4sBHHHQ")


def format_text_line(levels: Sequence[int]) -> str:
    return " ".join(str(a) for a in levels)


def parse_text_line(line: str, q: int) -> tuple:
    tokens = line.split()
    levels = []
    for pos, tok in enumerate(tokens):
        if not (tok.isascii() and tok.isdigit()):
            raise InvalidLevelError(f"token {tok!r} at symbol {pos} is not a level")
        levels.append(int(tok))
    return check_levels(levels, q)


def read_text(text: str, q: int) -> List[tuple]:
    """Parse one stream per line; errors carry the 1-based line number."""
    streams = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        try:
            streams.append(parse_text_line(line, q))
        except QaLocoError as exc:
            raise at_line(exc, lineno)
    return streams


def write_text(streams: Sequence[Sequence[int]]) -> str:
    return "".join(format_text_line(levels) + "\n" for levels in streams)


def encode_record(stream: SymbolStream) -> bytes:
    params = stream.params
    if params.q > 256:
        raise ParameterError(f"binary format stores one level per byte, q={params.q} > 256")
    if max(params.m, params.x, params.q) > 0xFFFF:
        raise ParameterError("q, m and x must fit in 16 bits for the binary format")
    header = _HEADER.pack(MAGIC, VERSION, params.q, params.m, params.x, stream.codeword_count)
    return header + bytes(stream.levels)


def iter_records(data: bytes) -> Iterator[SymbolStream]:
    offset = 0
    record = 1
    while offset < len(data):
        if len(data) - offset < _HEADER.size:
            raise FramingError(f"record {record}: truncated header at byte {offset}")
        magic, version, q, m, x, count = _HEADER.unpack_from(data, offset)
        if magic != MAGIC:
            raise FramingError(f"record {record}: bad magic {magic!r} at byte {offset}")
        if version != VERSION:
            raise FramingError(f"record {record}: unsupported version {version}")
        try:
            params = CodeParams(q, m, x)
        except ParameterError as exc:
            raise FramingError(f"record {record}: {exc}") from exc
        offset += _HEADER.size
        length = stream_length(count, m, x)
        if len(data) - offset < length:
            raise FramingError(f"record {record}: expected {length} levels, {len(data) - offset} bytes left")
        levels = check_levels(data[offset:offset + length], q)
        offset += length
        record += 1
        yield SymbolStream(params, levels)


def write_binary(streams: Sequence[SymbolStream]) -> bytes:
    return b"".join(encode_record(s) for s in streams)


def read_binary(data: bytes) -> List[SymbolStream]:
    return list(iter_records(data))
