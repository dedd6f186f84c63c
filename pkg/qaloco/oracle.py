"""Brute-force ground truth for small codes.

Every constraint-satisfying word is listed in lexicographic order and ranked
by position, independently of the recursion and the codec rule, so both can
be checked against it.
"""

from __future__ import annotations

import logging
from bisect import bisect_left
from dataclasses import dataclass
from typing import Callable, Container, List, Optional, Tuple

from .analysis import build_fstd, count_sequences
from .cardinality import get_table
from .codec import codeword_of_index, index_of_binary_codeword, index_of_codeword
from .errors import InstanceTooLargeError, ParameterError, QaLocoError, WordNotFoundError
from .levels import CodeParams, Codeword

logger = logging.getLogger(__name__)

DEFAULT_LIMIT = 10 ** 7


@dataclass(frozen=True)
class EnumeratedCode:
    params: CodeParams
    words: Tuple[Codeword, ...]

    def __len__(self) -> int:
        return len(self.words)


def enumerate_code(params: CodeParams, limit: int = DEFAULT_LIMIT) -> EnumeratedCode:
    """All words of length m avoiding e delta^r e (1 <= r <= x), sorted ascending.

    Words are grown one symbol at a time, each layer extending the previous
    one in order, which keeps the list sorted without a final sort. A branch
    is cut as soon as its last symbol closes a forbidden pattern.
    """
    q, m, x = params.q, params.m, params.x
    if q ** m > limit:
        raise InstanceTooLargeError(f"q^m = {q}^{m} exceeds the enumeration limit {limit}")
    e = q - 1
    # gap: lower levels written since the last e, None when no e is within reach
    layer: List[Tuple[Codeword, Optional[int]]] = [((), None)]
    for _ in range(m):
        nxt = []
        for word, gap in layer:
            for a in range(q):
                if a == e:
                    if gap is not None and 1 <= gap <= x:
                        continue
                    nxt.append((word + (a,), 0))
                else:
                    g = gap + 1 if gap is not None and gap < x else None
                    nxt.append((word + (a,), g))
        layer = nxt
    logger.debug("Enumerated %d words for q=%d m=%d x=%d", len(layer), q, m, x)
    return EnumeratedCode(params, tuple(word for word, _ in layer))


def brute_force_index(code: EnumeratedCode, cw) -> int:
    cw = tuple(cw)
    k = bisect_left(code.words, cw)
    if k == len(code.words) or code.words[k] != cw:
        raise WordNotFoundError(f"{list(cw)} is not a word of the q={code.params.q}, "
                                f"m={code.params.m}, x={code.params.x} code")
    return k


def group_partition(code: EnumeratedCode) -> Tuple[int, int, int]:
    """Words starting with a level below e, with e e, and with e then a lower level."""
    e = code.params.e_level
    n1 = n2 = n3 = 0
    for word in code.words:
        if word[0] != e:
            n1 += 1
        elif len(word) > 1 and word[1] == e:
            n2 += 1
        else:
            n3 += 1
    return n1, n2, n3


def _inverse_indices(size: int, sample: Optional[int]) -> Container[int]:
    """Indices to run the encoder on: all of them, or about `sample` spread evenly."""
    if sample is None or sample >= size:
        return range(size)
    if sample < 2:
        raise ParameterError(f"inverse_sample must be >= 2, got {sample}")
    step = -(-(size - 1) // (sample - 1))
    return frozenset(range(0, size, step)) | {size - 1}


def cross_check(params: CodeParams, table=None, limit: int = DEFAULT_LIMIT,
                log_cb: Optional[Callable[[str], None]] = None,
                inverse_sample: Optional[int] = None) -> List[str]:
    """Compare recursion, codec and FSTD with the enumerated code. Empty list means all agree.

    Every word is ranked. The encoder is run on every index, or on
    inverse_sample evenly spaced indices (both ends included) when given.
    """
    def _log(msg: str) -> None:
        logger.info(msg)
        if log_cb:
            log_cb(msg)

    table = table or get_table(params)
    if table.m_max < params.m:
        raise ParameterError(f"table covers m <= {table.m_max}, need {params.m}")
    code = enumerate_code(params, limit)
    failures: List[str] = []
    label = f"q={params.q} m={params.m} x={params.x}"

    expected = table.count(params.m)
    if len(code) != expected:
        failures.append(f"{label}: enumerated {len(code)} words, recursion gives {expected}")

    fstd_count = count_sequences(build_fstd(params.q, params.x), params.m)
    if fstd_count != len(code):
        failures.append(f"{label}: FSTD counts {fstd_count} words, enumeration {len(code)}")

    unrank = _inverse_indices(len(code), inverse_sample)
    for k, word in enumerate(code.words):
        try:
            g = index_of_codeword(word, table)
            back = codeword_of_index(k, table, params.m) if k in unrank else word
        except QaLocoError as exc:
            failures.append(f"{label}: word {k} {list(word)} raised {type(exc).__name__}: {exc}")
            continue
        if g != k:
            failures.append(f"{label}: word {list(word)} has rank {k}, rule gives {g}")
        if back != word:
            failures.append(f"{label}: index {k} encodes to {list(back)}, expected {list(word)}")
        if params.q == 2 and index_of_binary_codeword(word, table) != k:
            failures.append(f"{label}: binary rank form disagrees at word {list(word)}")
        if len(failures) >= 20:
            failures.append(f"{label}: stopping after 20 failures")
            break

    if params.m >= 2:
        got = group_partition(code)
        want = table.group_sizes(params.m)
        if got != want:
            failures.append(f"{label}: leading-symbol groups {got}, recursion gives {want}")

    _log(f"Oracle {label}: {len(code)} words, {'OK' if not failures else f'{len(failures)} failures'}")
    return failures
