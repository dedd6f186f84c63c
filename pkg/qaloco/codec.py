"""Lexicographic index <-> codeword mapping for QA-LOCO codes.

A codeword is a tuple of levels written left to right. Position i in the
rule runs from m-1 (the left-most symbol) down to 0 (the right-most symbol),
so position i lives at tuple index m-1-i. The rank of a codeword is

    g(c) = sum_i a_i * (q-1)^gamma_i * N_q(i - gamma_i, x)

where gamma_i = x - k_i + 1 when the nearest level-(q-1) symbol to the left
of position i sits k_i <= x places away, and 0 otherwise. Positions at or
beyond m count as level 0, which forces gamma_{m-1} = 0.

Messages ride on indices 1 .. 2^s (s = s^c): index 0 is 0^m and the top
index N-1 is e^m, and both are removed so every written stream self-clocks.
"""

from __future__ import annotations

import logging
from typing import List, Optional, Sequence, Tuple, Union

from .cardinality import CardinalityTable, get_table
from .errors import (
    InvalidCodewordError,
    MessageSpaceError,
    NumericalError,
    ParameterError,
    TableRangeError,
)
from .levels import CodeParams, Codeword, check_levels, format_gf, scan_forbidden

logger = logging.getLogger(__name__)

BitMessage = str


def gamma_at(prefix: Sequence[int], params: CodeParams) -> int:
    """gamma_i from the symbols already written left of position i.

    prefix ends with the symbol at position i+1; symbols it does not reach
    are the implicit zeros beyond the left edge.
    """
    e = params.e_level
    for k in range(1, params.x + 1):
        if k > len(prefix):
            break
        if prefix[-k] == e:
            return params.x - k + 1
    return 0


def gamma_profile(levels: Sequence[int], params: CodeParams) -> List[int]:
    """All gamma_i of a codeword, listed by position (index 0 is the RMS)."""
    m = len(levels)
    gammas = [0] * m
    for t in range(m):
        gammas[m - 1 - t] = gamma_at(levels[max(0, t - params.x):t], params)
    return gammas


def _params_for(table: CardinalityTable, m: int) -> CodeParams:
    if m > table.m_max:
        raise TableRangeError(f"codeword length {m} exceeds table range m_max={table.m_max}")
    return CodeParams(table.q, m, table.x)


def index_of_codeword(cw: Sequence[int], table: CardinalityTable) -> int:
    """Rank of cw among all constraint-satisfying words of its length."""
    levels = check_levels(cw, table.q)
    if not levels:
        raise ParameterError("codeword must contain at least one symbol")
    params = _params_for(table, len(levels))
    hits = scan_forbidden(levels, params)
    if hits:
        raise InvalidCodewordError(
            f"codeword {list(levels)} contains forbidden patterns at {hits}", hits
        )
    m = params.m
    g = 0
    for t, a in enumerate(levels):
        if a == 0:
            continue
        i = m - 1 - t
        gamma = gamma_at(levels[max(0, t - params.x):t], params)
        g += a * table.weighted_term(i, gamma)
    return g


def _pick_level(residual: int, weight: int, q: int) -> int:
    """Largest level a with a * weight <= residual, capped at q-1."""
    if residual < weight:
        return 0
    if residual >= (q - 1) * weight:
        return q - 1
    # thresholds a * weight strictly increase, so binary search over [1, q-2]
    lo, hi = 1, q - 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid * weight <= residual:
            lo = mid
        else:
            hi = mid - 1
    return lo


def codeword_of_index(
    g: int, table: CardinalityTable, m: int, trace: bool = False
) -> Union[Codeword, Tuple[Codeword, List[int]]]:
    """The codeword with rank g; with trace=True also the residual after each symbol."""
    params = _params_for(table, m)
    top = table.count(m)
    if not isinstance(g, int) or not 0 <= g < top:
        raise TableRangeError(f"index {g} outside [0, {top - 1}] for q={table.q}, m={m}, x={table.x}")
    q = table.q
    levels: List[int] = []
    residuals: List[int] = []
    residual = g
    for i in range(m - 1, -1, -1):
        gamma = gamma_at(levels, params)
        weight = table.weighted_term(i, gamma)
        a = _pick_level(residual, weight, q)
        residual -= a * weight
        levels.append(a)
        residuals.append(residual)
    if residual != 0:
        raise NumericalError(f"residual {residual} left after encoding index {g}")
    cw = tuple(levels)
    if trace:
        return cw, residuals
    return cw


def bits_to_int(bits: BitMessage) -> int:
    """decimal(b), most significant bit first."""
    if not bits or any(ch not in "01" for ch in bits):
        raise ParameterError(f"message must be a non-empty string of 0/1, got {bits!r}")
    return int(bits, 2)


def int_to_bits(value: int, width: int) -> BitMessage:
    if value < 0 or value.bit_length() > width:
        raise ParameterError(f"value {value} does not fit in {width} bits")
    return format(value, f"0{width}b") if width else ""


def encode_message(bits: BitMessage, table: CardinalityTable, m: int) -> Codeword:
    s = table.message_length(m)
    if len(bits) != s:
        raise ParameterError(f"message length {len(bits)} != s^c = {s} for m={m}")
    return codeword_of_index(bits_to_int(bits) + 1, table, m)


def decode_codeword(cw: Sequence[int], table: CardinalityTable) -> BitMessage:
    levels = check_levels(cw, table.q)
    m = len(levels)
    s = table.message_length(m)
    g = index_of_codeword(levels, table)
    if g == 0 or g > 1 << s:
        raise MessageSpaceError(
            f"non-message codeword {format_gf(levels, table.q)} (index {g}, message indices are 1..{1 << s})",
            g,
        )
    return int_to_bits(g - 1, s)


def index_of_binary_codeword(cw: Sequence[int], table: CardinalityTable) -> int:
    """Binary-only form of the rank: sum of a_i * N_2(i - a_{i+1} * x, x)."""
    if table.q != 2:
        raise ParameterError(f"binary rank form needs q=2, got q={table.q}")
    levels = check_levels(cw, 2)
    params = _params_for(table, len(levels))
    hits = scan_forbidden(levels, params)
    if hits:
        raise InvalidCodewordError(f"codeword {list(levels)} contains forbidden patterns at {hits}", hits)
    m = len(levels)
    g = 0
    for t, a in enumerate(levels):
        if a:
            left = levels[t - 1] if t > 0 else 0
            g += int(table.cardinality(m - 1 - t - left * table.x))
    return g


class QaLocoCodec:
    """A (q, m, x) code bound to its shared cardinality table."""

    def __init__(self, q: int, m: int, x: int, m_max: Optional[int] = None):
        self.params = CodeParams(q, m, x)
        if m < 2:
            raise ParameterError(f"self-clocked codes need m >= 2, got {m}")
        self.table = get_table(self.params, m_max or 0)
        self.message_length = self.table.message_length(m)

    @property
    def q(self) -> int:
        return self.params.q

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def x(self) -> int:
        return self.params.x

    @property
    def cardinality(self) -> int:
        return self.table.count(self.m)

    def encode_index(self, g: int) -> Codeword:
        return codeword_of_index(g, self.table, self.m)

    def decode_index(self, cw: Sequence[int]) -> int:
        if len(cw) != self.m:
            raise ParameterError(f"codeword length {len(cw)} != m = {self.m}")
        return index_of_codeword(cw, self.table)

    def encode_message(self, bits: BitMessage) -> Codeword:
        return encode_message(bits, self.table, self.m)

    def decode_codeword(self, cw: Sequence[int]) -> BitMessage:
        if len(cw) != self.m:
            raise ParameterError(f"codeword length {len(cw)} != m = {self.m}")
        return decode_codeword(cw, self.table)

    def reconfigure(self, **changes: int) -> "QaLocoCodec":
        """A codec on new parameters, e.g. reconfigure(x=2) as cells wear."""
        values = {"q": self.q, "m": self.m, "x": self.x}
        unknown = set(changes) - set(values)
        if unknown:
            raise ParameterError(f"unknown codec parameters: {sorted(unknown)}")
        values.update(changes)
        logger.info("Reconfiguring codec q=%d m=%d x=%d -> q=%d m=%d x=%d",
                    self.q, self.m, self.x, values["q"], values["m"], values["x"])
        return QaLocoCodec(values["q"], values["m"], values["x"])

    def __repr__(self) -> str:
        return f"QaLocoCodec(q={self.q}, m={self.m}, x={self.x}, s={self.message_length})"
