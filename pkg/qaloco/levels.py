"""Charge levels, GF(q) symbol labels and the forbidden-pattern set.

Symbols are handled as charge levels a in [0, q-1] throughout the package:
level 0 is the field zero and level k >= 1 is alpha^(k-1). No field
arithmetic is ever needed, the field only supplies names for the levels.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import InvalidLevelError, InvalidSymbolError, ParameterError

Codeword = Tuple[int, ...]

_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_PLAIN_DIGITS = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")
_ASCII_DIGITS = "0123456789"


@dataclass(frozen=True)
class CodeParams:
    """The (q, m, x) triple of a QA-LOCO code."""

    q: int
    m: int
    x: int

    def __post_init__(self):
        for name in ("q", "m", "x"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ParameterError(f"{name} must be an integer, got {value!r}")
        if self.q < 2:
            raise ParameterError(f"q must be >= 2, got {self.q}")
        if self.m < 1:
            raise ParameterError(f"m must be >= 1, got {self.m}")
        if self.x < 1:
            raise ParameterError(f"x must be >= 1, got {self.x}")

    @property
    def e_level(self) -> int:
        """Level of alpha^(q-2), the highest charge level."""
        return self.q - 1

    def with_length(self, m: int) -> "CodeParams":
        return CodeParams(self.q, m, self.x)


@dataclass(frozen=True)
class GfSymbol:
    """A GF(q) element named by its power of the primitive element.

    power is None for the field zero.
    """

    power: Optional[int] = None

    @classmethod
    def zero(cls) -> "GfSymbol":
        return cls(None)

    @property
    def is_zero(self) -> bool:
        return self.power is None

    def __str__(self) -> str:
        if self.power is None:
            return "0"
        if self.power == 0:
            return "1"
        if self.power == 1:
            return "α"
        return "α" + str(self.power).translate(_SUPERSCRIPTS)


def level_of_symbol(symbol: GfSymbol, q: int) -> int:
    if symbol.is_zero:
        return 0
    power = symbol.power
    if not isinstance(power, int) or not 0 <= power <= q - 2:
        raise InvalidSymbolError(f"symbol power {power!r} outside [0, {q - 2}] for q={q}")
    return power + 1


def symbol_of_level(level: int, q: int) -> GfSymbol:
    if not isinstance(level, int) or not 0 <= level <= q - 1:
        raise InvalidLevelError(f"level {level!r} outside [0, {q - 1}] for q={q}")
    if level == 0:
        return GfSymbol.zero()
    return GfSymbol(level - 1)


def check_levels(seq: Iterable[int], q: int) -> Codeword:
    """Return seq as a tuple of levels, rejecting anything outside [0, q-1]."""
    levels = tuple(seq)
    for pos, a in enumerate(levels):
        if isinstance(a, bool) or not isinstance(a, int) or not 0 <= a <= q - 1:
            raise InvalidLevelError(f"level {a!r} at position {pos} outside [0, {q - 1}]")
    return levels


def forbidden_set_size(params: CodeParams) -> int:
    """|Q^q_x| as the geometric sum, which stays valid for q = 2."""
    return sum((params.q - 1) ** r for r in range(1, params.x + 1))


def forbidden_patterns(params: CodeParams) -> Iterator[Codeword]:
    """Every pattern (q-1) mu^r (q-1) with r in [1, x] and mu_j < q-1."""
    e = params.e_level
    for r in range(1, params.x + 1):
        for middle in product(range(e), repeat=r):
            yield (e,) + middle + (e,)


def scan_forbidden(seq: Sequence[int], params: CodeParams) -> List[Tuple[int, int]]:
    """Find every forbidden occurrence in seq as (start position, gap length).

    Positions count from the left of seq. Overlapping patterns are each
    reported, e.g. 3 0 3 0 3 with q=4 gives two hits.
    """
    levels = check_levels(seq, params.q)
    e = params.e_level
    hits: List[Tuple[int, int]] = []
    last_e = None
    for pos, a in enumerate(levels):
        if a != e:
            continue
        if last_e is not None:
            gap = pos - last_e - 1
            if 1 <= gap <= params.x:
                hits.append((last_e, gap))
        last_e = pos
    return hits


def satisfies_constraint(seq: Sequence[int], params: CodeParams) -> bool:
    return not scan_forbidden(seq, params)


def format_gf(levels: Sequence[int], q: int) -> str:
    """Render levels in GF notation, e.g. (1, 3, 3, 1, 0, 2) -> 1α²α²10α for q=4."""
    return "".join(str(symbol_of_level(a, q)) for a in levels)


def _caret_exponent(text: str, start: int, q: int) -> str:
    """Longest digit run at start whose value is a valid power for q.

    Digits after an unbraced caret may be followed by the symbols 0 and 1,
    so "α^20" is α² then 0 for q=4. Falls back to the first digit so an
    out-of-range power still gets reported.
    """
    end = start
    while end < len(text) and text[end] in _ASCII_DIGITS:
        end += 1
    for stop in range(end, start, -1):
        if int(text[start:stop]) <= q - 2:
            return text[start:stop]
    return text[start:start + 1]


def parse_gf(text: str, q: int) -> Codeword:
    """Inverse of format_gf.

    Accepts 0, 1, α (or a), superscript powers like α², and caret powers
    α^2 or α^{12}. An unbraced caret power takes the longest digit run that
    is a valid power for q.
    """
    text = text.replace(" ", "")
    levels = []
    i = 0
    while i < len(text):
        ch = text[i]
        i += 1
        if ch in "01":
            levels.append(int(ch))
            continue
        if ch not in ("α", "a"):
            raise InvalidSymbolError(f"cannot parse symbol {ch!r} in {text!r}")
        if text.startswith("^{", i):
            j = text.find("}", i)
            if j < 0:
                raise InvalidSymbolError(f"unterminated exponent at {i} in {text!r}")
            digits = text[i + 2:j]
            if not digits or any(c not in _ASCII_DIGITS for c in digits):
                raise InvalidSymbolError(f"bad exponent {digits!r} in {text!r}")
            j += 1
        elif i < len(text) and text[i] == "^":
            digits = _caret_exponent(text, i + 1, q)
            if not digits:
                raise InvalidSymbolError(f"missing exponent at {i} in {text!r}")
            j = i + 1 + len(digits)
        else:
            j = i
            while j < len(text) and text[j] in "⁰¹²³⁴⁵⁶⁷⁸⁹":
                j += 1
            digits = text[i:j].translate(_PLAIN_DIGITS)
        i = j
        power = int(digits) if digits else 1
        levels.append(level_of_symbol(GfSymbol(power), q))
    return tuple(levels)
