#!/usr/bin/env python3
"""Text and binary stream files."""

import struct
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from qaloco.cardinality import get_table
from qaloco.errors import FramingError, InvalidLevelError, ParameterError
from qaloco.formats import (
    MAGIC,
    encode_record,
    format_text_line,
    parse_text_line,
    read_binary,
    read_text,
    write_binary,
    write_text,
)
from qaloco.levels import CodeParams
from qaloco.stream import SymbolStream, encode_stream


def _example_stream():
    table = get_table(CodeParams(4, 6, 1))
    return encode_stream(["11011001110", "11011001111"], table, 6)


def test_text_line():
    assert format_text_line((1, 3, 3, 1, 0, 2)) == "1 3 3 1 0 2"
    assert parse_text_line("1 3 3 1 0 2", 4) == (1, 3, 3, 1, 0, 2)
    assert parse_text_line("", 4) == ()


def test_text_parse_errors():
    with pytest.raises(InvalidLevelError):
        parse_text_line("1 3 x", 4)
    with pytest.raises(InvalidLevelError):
        parse_text_line("1 4", 4)


def test_text_file():
    text = write_text([(1, 3, 3, 1, 0, 2), ()])
    assert text == "1 3 3 1 0 2\n\n"
    assert read_text(text, 4) == [(1, 3, 3, 1, 0, 2), ()]


def test_text_errors_name_their_line():
    with pytest.raises(InvalidLevelError) as info:
        read_text("1 2\n1 9\n", 4)
    assert info.value.line == 2
    assert str(info.value).startswith("line 2: ")
    with pytest.raises(InvalidLevelError, match="line 1: token .α²."):
        read_text("1 α²\n", 4)


def test_binary_record_layout():
    stream = _example_stream()
    data = encode_record(stream)
    assert data[:4] == MAGIC
    assert data[4] == 1
    q, m, x, count = struct.unpack_from("<HHHQ", data, 5)
    assert (q, m, x, count) == (4, 6, 1, 2)
    assert data[19:] == bytes(stream.levels)


def test_binary_concatenated_records():
    first = _example_stream()
    second = SymbolStream(CodeParams(8, 3, 2), (1, 7, 0))
    assert read_binary(write_binary([first, second])) == [first, second]
    assert read_binary(b"") == []


def test_binary_errors():
    data = encode_record(_example_stream())
    with pytest.raises(FramingError, match="truncated header"):
        read_binary(data[:10])
    with pytest.raises(FramingError, match="bad magic"):
        read_binary(b"XXXX" + data[4:])
    with pytest.raises(FramingError, match="unsupported version"):
        read_binary(data[:4] + b"\x02" + data[5:])
    with pytest.raises(FramingError, match="expected 13 levels"):
        read_binary(data[:-1])
    with pytest.raises(InvalidLevelError):
        read_binary(data[:-1] + b"\x09")


def test_binary_rejects_large_q():
    with pytest.raises(ParameterError):
        encode_record(SymbolStream(CodeParams(300, 2, 1), (299, 0)))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
