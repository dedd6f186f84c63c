"""Capacity of the Q^q_x constraint and the rates of self-clocked QA-LOCO codes."""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import asdict, dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Union

import numpy as np

from .cardinality import CardinalityTable, get_table
from .errors import NumericalError, ParameterError
from .levels import CodeParams

logger = logging.getLogger(__name__)

POWER_ITERATION_TOL = 1e-12
POWER_ITERATION_CAP = 1_000_000


@dataclass(frozen=True)
class Fstd:
    """Finite-state transition diagram of the constraint.

    States: F (free), E (last symbol was level q-1), D_j (level q-1 followed
    by exactly j lower levels). adjacency[u, v] counts the symbols that move
    u to v. D_j -> E is absent since it would complete e delta^j e.
    """

    q: int
    x: int
    states: tuple
    adjacency: np.ndarray

    def index(self, state: str) -> int:
        return self.states.index(state)


def build_fstd(q: int, x: int) -> Fstd:
    CodeParams(q, 1, x)
    n = x + 2
    states = ("F", "E") + tuple(f"D{j}" for j in range(1, x + 1))
    adj = np.zeros((n, n), dtype=np.int64)
    F, E = 0, 1
    adj[F, F] = q - 1
    adj[F, E] = 1
    adj[E, E] = 1
    adj[E, 2] = q - 1
    for j in range(1, x):
        adj[1 + j, 2 + j] = q - 1
    adj[1 + x, F] = q - 1
    return Fstd(q, x, states, adj)


def count_sequences(fstd: Fstd, length: int) -> int:
    """Exact number of constraint-satisfying strings of the given length."""
    if length < 0:
        raise ParameterError(f"length must be >= 0, got {length}")
    power = np.linalg.matrix_power(fstd.adjacency.astype(object), length)
    return int(sum(power[fstd.index("F"), :]))


def perron_eigenvalue(matrix: np.ndarray, tol: float = POWER_ITERATION_TOL,
                      max_iter: int = POWER_ITERATION_CAP) -> float:
    """Largest eigenvalue of a nonnegative irreducible matrix by power iteration."""
    A = np.asarray(matrix, dtype=float)
    v = np.ones(A.shape[0])
    lam = 0.0
    for step in range(1, max_iter + 1):
        w = A @ v
        norm = np.linalg.norm(w)
        if norm == 0:
            raise NumericalError("power iteration collapsed to the zero vector")
        lam_new = norm / np.linalg.norm(v)
        v = w / norm
        if abs(lam_new - lam) <= tol * lam_new:
            logger.debug("Power iteration converged after %d steps: %.15f", step, lam_new)
            return float(lam_new)
        lam = lam_new
    raise NumericalError(f"power iteration did not converge within {max_iter} steps")


@lru_cache(maxsize=None)
def capacity(q: int, x: int) -> float:
    """Capacity in bits per symbol: log2 of the Perron eigenvalue of the FSTD."""
    return math.log2(perron_eigenvalue(build_fstd(q, x).adjacency))


def normalized_capacity(q: int, x: int) -> float:
    return capacity(q, x) / math.log2(q)


def int_log(n: int, base: int) -> int:
    """floor(log_base(n)) for n >= 1, in exact integer arithmetic."""
    if n < 1:
        raise ParameterError(f"log of {n} is undefined")
    if base == 2:
        return n.bit_length() - 1
    k, power = 0, base
    while power <= n:
        k += 1
        power *= base
    return k


def round_half_up(value: Union[Fraction, float], places: int = 4) -> Decimal:
    if isinstance(value, Fraction):
        d = Decimal(value.numerator) / Decimal(value.denominator)
    else:
        d = Decimal(repr(value))
    return d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class RateReport:
    """Rate figures of one (q, m, x) code.

    rate is in information bits per coded symbol, normalized_rate divides by
    log2(q). With q-ary messages (message_base = q) s counts q-ary symbols.
    """

    q: int
    m: int
    x: int
    s: int
    rate: float
    normalized_rate: float
    capacity: float
    normalized_capacity: float
    message_base: int = 2

    def rounded(self, places: int = 4) -> Dict[str, object]:
        row = asdict(self)
        for key in ("rate", "normalized_rate", "capacity", "normalized_capacity"):
            row[key] = round_half_up(row[key], places)
        return row


def _check_base(q: int, base: int) -> None:
    if base not in (2, q):
        raise ParameterError(f"message base must be 2 or q={q}, got {base}")


def rate(params: CodeParams, table: Optional[CardinalityTable] = None,
         message_base: int = 2) -> RateReport:
    if params.m < 2:
        raise ParameterError(f"rates need m >= 2, got {params.m}")
    _check_base(params.q, message_base)
    table = table or get_table(params)
    clocked = table.clocked_cardinality(params.m)
    s = int_log(clocked, message_base)
    bits = s * math.log2(message_base) / (params.m + params.x)
    return RateReport(
        q=params.q,
        m=params.m,
        x=params.x,
        s=s,
        rate=bits,
        normalized_rate=bits / math.log2(params.q),
        capacity=capacity(params.q, params.x),
        normalized_capacity=normalized_capacity(params.q, params.x),
        message_base=message_base,
    )


def omitted_codeword_count(params: CodeParams, table: Optional[CardinalityTable] = None,
                           message_base: int = 2) -> int:
    """Clocked codewords left unused when messages are base-ary words."""
    _check_base(params.q, message_base)
    table = table or get_table(params)
    clocked = table.clocked_cardinality(params.m)
    return clocked - message_base ** int_log(clocked, message_base)


def adder_width(table: CardinalityTable, m: int) -> int:
    """Width in bits of the adders the encoder and decoder run on."""
    return table.message_length(m)


def smallest_length(q: int, x: int, target_rate: Union[float, str, Fraction],
                    m_limit: int = 1000) -> int:
    """Smallest m whose binary-message rate reaches target_rate."""
    target = Fraction(str(target_rate)) if not isinstance(target_rate, Fraction) else target_rate
    table = get_table(CodeParams(q, m_limit, x))
    for m in range(2, m_limit + 1):
        clocked = table.clocked_cardinality(m)
        if clocked >= 1 and Fraction(clocked.bit_length() - 1, m + x) >= target:
            return m
    raise ParameterError(f"no m <= {m_limit} reaches rate {target_rate} for q={q}, x={x}")


def generate_rate_table(q_list: Sequence[int], x: int,
                        m_list: Union[Sequence[int], Mapping[int, Sequence[int]]]) -> List[RateReport]:
    """Rate reports for every q and m, in q-major order.

    m_list may be one grid shared by every q or a mapping q -> grid.
    """
    rows = []
    for q in q_list:
        grid = m_list[q] if isinstance(m_list, Mapping) else m_list
        table = get_table(CodeParams(q, max(grid), x))
        for m in grid:
            rows.append(rate(CodeParams(q, m, x), table))
    return rows


CSV_FIELDS = ("q", "m", "x", "s_c", "rate", "normalized_rate", "capacity")


def format_rate_table(rows: Sequence[RateReport], as_csv: bool = False) -> str:
    records = []
    for report in rows:
        r = report.rounded()
        records.append({
            "q": r["q"], "m": r["m"], "x": r["x"], "s_c": r["s"],
            "rate": r["rate"], "normalized_rate": r["normalized_rate"], "capacity": r["capacity"],
        })
    if as_csv:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(records)
        return buf.getvalue()
    widths = {f: max([len(f)] + [len(str(rec[f])) for rec in records]) for f in CSV_FIELDS}
    lines = ["  ".join(f.rjust(widths[f]) for f in CSV_FIELDS)]
    for rec in records:
        lines.append("  ".join(str(rec[f]).rjust(widths[f]) for f in CSV_FIELDS))
    return "\n".join(lines) + "\n"
