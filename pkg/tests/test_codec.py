#!/usr/bin/env python3
"""Index <-> codeword mapping and the message layer."""

import sys
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent.parent))

from qaloco.cardinality import get_table
from qaloco.codec import (
    QaLocoCodec,
    bits_to_int,
    codeword_of_index,
    decode_codeword,
    encode_message,
    gamma_at,
    gamma_profile,
    index_of_binary_codeword,
    index_of_codeword,
    int_to_bits,
)
from qaloco.errors import InvalidCodewordError, MessageSpaceError, ParameterError, TableRangeError
from qaloco.levels import CodeParams, parse_gf
from qaloco.oracle import enumerate_code

ROUNDTRIP_CONFIGS = [(2, 10, 1), (4, 14, 1), (4, 20, 2), (8, 18, 1), (16, 18, 1), (32, 19, 1)]


def _table(q, m, x):
    return get_table(CodeParams(q, m, x))


def test_indices_q4_m6_x2():
    table = _table(4, 6, 2)
    assert index_of_codeword(parse_gf("011α²0α", 4), table) == 334
    assert index_of_codeword(parse_gf("α0α²α²α0", 4), table) == 1850
    assert codeword_of_index(334, table, 6) == (0, 1, 1, 3, 0, 2)
    assert codeword_of_index(1850, table, 6) == (2, 0, 3, 3, 2, 0)


def test_gamma_profile():
    params = CodeParams(4, 6, 2)
    # listed from the right-most position: e sits two places left of position 0
    assert gamma_profile((0, 1, 1, 3, 0, 2), params) == [1, 2, 0, 0, 0, 0]


@given(q=st.integers(2, 6), x=st.integers(1, 4), data=st.data())
@settings(max_examples=300)
def test_gamma_only_sees_the_last_x_symbols(q, x, data):
    params = CodeParams(q, 1, x)
    tail = data.draw(st.lists(st.integers(0, q - 1), min_size=x, max_size=x + 4))
    older = data.draw(st.lists(st.integers(0, q - 1), max_size=8))
    # older symbols never change the result
    assert gamma_at(older + tail, params) == gamma_at(tail, params) == gamma_at(tail[-x:], params)


def test_encoder_residual_trace():
    table = _table(4, 6, 1)
    cw, residuals = codeword_of_index(1743, table, 6, trace=True)
    assert cw == parse_gf("1α²α²10α", 4)
    assert residuals == [854, 158, 14, 2, 2, 0], f"residuals {residuals}"


def test_message_bits_are_msb_first():
    table = _table(4, 6, 1)
    assert bits_to_int("11011001110") == 1742
    assert encode_message("11011001110", table, 6) == (1, 3, 3, 1, 0, 2)
    assert encode_message("11011001111", table, 6) == (1, 3, 3, 1, 0, 3)
    assert encode_message("1" * 11, table, 6) == codeword_of_index(2048, table, 6)
    assert decode_codeword((1, 3, 3, 1, 0, 2), table) == "11011001110"


def test_int_to_bits():
    assert int_to_bits(5, 4) == "0101"
    with pytest.raises(ParameterError):
        int_to_bits(16, 4)
    with pytest.raises(ParameterError):
        bits_to_int("10a")


def test_constant_codewords_carry_no_message():
    table = _table(4, 6, 1)
    for cw in [(0,) * 6, (3,) * 6]:
        with pytest.raises(MessageSpaceError) as info:
            decode_codeword(cw, table)
        assert "non-message codeword" in str(info.value)
    # e^m is the top of the code
    assert index_of_codeword((3,) * 6, table) == table.count(6) - 1


def test_index_above_message_space():
    table = _table(4, 6, 1)
    cw = codeword_of_index(2049, table, 6)
    with pytest.raises(MessageSpaceError) as info:
        decode_codeword(cw, table)
    assert info.value.index == 2049


def test_forbidden_codeword_rejected():
    table = _table(4, 6, 1)
    with pytest.raises(InvalidCodewordError) as info:
        index_of_codeword((0, 3, 1, 3, 0, 0), table)
    assert info.value.hits == [(1, 1)]


def test_index_range():
    table = _table(4, 6, 1)
    with pytest.raises(TableRangeError):
        codeword_of_index(3409, table, 6)
    with pytest.raises(TableRangeError):
        codeword_of_index(-1, table, 6)


def test_message_length_mismatch():
    table = _table(4, 6, 1)
    with pytest.raises(ParameterError):
        encode_message("1101100111", table, 6)


@pytest.mark.parametrize("q,m,x", ROUNDTRIP_CONFIGS)
@given(data=st.data())
@settings(max_examples=1000, deadline=None)
def test_message_roundtrip(q, m, x, data):
    codec = QaLocoCodec(q, m, x)
    value = data.draw(st.integers(0, (1 << codec.message_length) - 1))
    bits = int_to_bits(value, codec.message_length)
    cw = codec.encode_message(bits)
    assert len(cw) == m
    assert codec.decode_codeword(cw) == bits


@given(q=st.integers(2, 8), x=st.integers(1, 3), m=st.integers(1, 30), data=st.data())
@settings(max_examples=300, deadline=None)
def test_index_roundtrip_any_params(q, x, m, data):
    table = get_table(CodeParams(q, m, x))
    g = data.draw(st.integers(0, table.count(m) - 1))
    assert index_of_codeword(codeword_of_index(g, table, m), table) == g


@pytest.mark.parametrize("x", [1, 2, 3])
def test_binary_rank_form_agrees(x):
    table = get_table(CodeParams(2, 14, x))
    for m in range(1, 15):
        for k, word in enumerate(enumerate_code(CodeParams(2, m, x)).words):
            assert index_of_binary_codeword(word, table) == k, f"m={m} x={x} word={word}"
            assert index_of_codeword(word, table) == k


def test_binary_rank_form_needs_q2():
    with pytest.raises(ParameterError):
        index_of_binary_codeword((0, 1), _table(4, 2, 1))


def test_codec_object():
    codec = QaLocoCodec(4, 6, 1)
    assert codec.message_length == 11
    assert codec.cardinality == 3409
    assert codec.decode_index(codec.encode_index(1743)) == 1743
    assert "s=11" in repr(codec)
    with pytest.raises(ParameterError):
        codec.decode_codeword((1, 2, 3))


def test_reconfigure_raises_x():
    codec = QaLocoCodec(4, 6, 1)
    stricter = codec.reconfigure(x=2)
    assert (stricter.q, stricter.m, stricter.x) == (4, 6, 2)
    assert stricter.cardinality == 3031
    assert stricter.message_length == 11
    with pytest.raises(ParameterError):
        codec.reconfigure(y=3)


def test_codec_needs_m_at_least_2():
    with pytest.raises(ParameterError):
        QaLocoCodec(4, 1, 1)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
