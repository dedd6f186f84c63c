"""Exact QA-LOCO cardinalities N_q(m, x) and the weighted terms of the codec rule.

The recursion

    N(m) = q N(m-1) - (q-1) N(m-2) + (q-1)^(x+1) N(m-x-2),   m >= 2
    N(m) = (q-1)^m for m <= 0,  N(1) = q

reaches negative indices for small m, where (q-1)^m is fractional, so the
table keeps exact rationals and checks integrality for every m >= 1.
"""

from __future__ import annotations

import logging
import threading
from fractions import Fraction
from typing import Dict, List, Tuple

from .errors import NumericalError, ParameterError, TableRangeError
from .levels import CodeParams

logger = logging.getLogger(__name__)


class CardinalityTable:
    """Immutable table of N_q(i, x) for i in [-(x+1), m_max].

    The weighted terms (q-1)^gamma * N_q(i-gamma, x) used by the encoder and
    decoder are precomputed for every i in [0, m_max] and gamma in [0, x], so
    the codec hot path is big-integer compares and adds only.
    """

    def __init__(self, params: CodeParams, m_max: int):
        if m_max < 1:
            raise ParameterError(f"m_max must be >= 1, got {m_max}")
        self.params = params
        self.m_max = m_max
        self.low = -(params.x + 1)
        self._values: Dict[int, Fraction] = {}
        self._weights: List[Tuple[int, ...]] = []
        self._build()

    @property
    def q(self) -> int:
        return self.params.q

    @property
    def x(self) -> int:
        return self.params.x

    def _build(self) -> None:
        q, x = self.q, self.x
        values = self._values
        for i in range(self.low, 1):
            values[i] = Fraction(q - 1) ** i
        values[1] = Fraction(q)
        boost = (q - 1) ** (x + 1)
        for i in range(2, self.m_max + 1):
            n = q * values[i - 1] - (q - 1) * values[i - 2] + boost * values[i - x - 2]
            if n.denominator != 1:
                raise NumericalError(f"N_{q}({i},{x}) = {n} is not an integer")
            values[i] = n

        for i in range(0, self.m_max + 1):
            row = []
            for gamma in range(0, x + 1):
                term = (q - 1) ** gamma * values[i - gamma]
                if term.denominator != 1:
                    raise NumericalError(f"weighted term ({i}, {gamma}) = {term} is not an integer")
                row.append(term.numerator)
            self._weights.append(tuple(row))
        logger.debug("Built cardinality table q=%d x=%d up to m=%d", q, x, self.m_max)

    def cardinality(self, i: int) -> Fraction:
        if not self.low <= i <= self.m_max:
            raise TableRangeError(f"index {i} outside table range [{self.low}, {self.m_max}]")
        return self._values[i]

    def count(self, i: int) -> int:
        """N_q(i, x) as a plain integer for i >= 1."""
        if i < 1:
            raise TableRangeError(f"N_q({i}, x) is only integral for i >= 1")
        return self.cardinality(i).numerator

    def weighted_term(self, i: int, gamma: int) -> int:
        if not 0 <= i <= self.m_max:
            raise TableRangeError(f"position {i} outside [0, {self.m_max}]")
        if not 0 <= gamma <= self.x:
            raise TableRangeError(f"gamma {gamma} outside [0, {self.x}]")
        return self._weights[i][gamma]

    def clocked_cardinality(self, m: int) -> int:
        """N^c_q(m, x): the code without the two constant codewords 0^m and e^m."""
        if m < 2:
            raise ParameterError(f"self-clocked codes need m >= 2, got {m}")
        return self.count(m) - 2

    def message_length(self, m: int) -> int:
        """s^c = floor(log2(N - 2)), taken from the bit length of the exact integer."""
        clocked = self.clocked_cardinality(m)
        if clocked < 1:
            raise ParameterError(f"N_q({m}, x) - 2 = {clocked} leaves no room for messages")
        return clocked.bit_length() - 1

    def group_sizes(self, m: int) -> Tuple[int, int, int]:
        """Sizes of the three leading-symbol groups of the length-m code.

        Group 1 starts with a level below q-1, group 2 with two level-(q-1)
        symbols, group 3 with level q-1 followed by x+1 lower levels (or as
        many as fit).
        """
        if m < 2:
            raise ParameterError(f"group sizes need m >= 2, got {m}")
        q, x = self.q, self.x
        n1 = (q - 1) * self.cardinality(m - 1)
        n2 = self.cardinality(m - 1) - (q - 1) * self.cardinality(m - 2)
        n3 = (q - 1) ** (x + 1) * self.cardinality(m - x - 2)
        return int(n1), int(n2), int(n3)

    def __repr__(self) -> str:
        return f"CardinalityTable(q={self.q}, x={self.x}, m_max={self.m_max})"


def build_table(params: CodeParams, m_max: int) -> CardinalityTable:
    return CardinalityTable(params, m_max)


def cardinality(table: CardinalityTable, i: int) -> Fraction:
    return table.cardinality(i)


def weighted_term(table: CardinalityTable, i: int, gamma: int) -> int:
    return table.weighted_term(i, gamma)


def clocked_cardinality(table: CardinalityTable, m: int) -> int:
    return table.clocked_cardinality(m)


def message_length(table: CardinalityTable, m: int) -> int:
    return table.message_length(m)


def group_sizes(table: CardinalityTable, m: int) -> Tuple[int, int, int]:
    return table.group_sizes(m)


# Shared tables keyed by (q, x); a request for a longer m rebuilds the entry.
_tables: Dict[Tuple[int, int], CardinalityTable] = {}
_tables_lock = threading.Lock()


def get_table(params: CodeParams, m_max: int = 0) -> CardinalityTable:
    """Get or build the shared table for (q, x) covering at least max(m, m_max)."""
    need = max(params.m, m_max)
    key = (params.q, params.x)
    with _tables_lock:
        table = _tables.get(key)
        if table is None or table.m_max < need:
            table = CardinalityTable(CodeParams(params.q, need, params.x), need)
            _tables[key] = table
        return table
