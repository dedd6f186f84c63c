"""Symbol streams: codewords joined by bridging patterns.

Layout of a stream of n codewords:

    c_0 | b_1 | c_1 | b_2 | ... | b_{n-1} | c_{n-1}

with every c_k of length m and every bridge b_k of length x. A bridge is
e^x when both abutting symbols are level q-1 and 0^x otherwise, which keeps
the whole stream free of forbidden patterns. Since the constant codewords
0^m and e^m never carry messages, no run can be longer than 2(m-1)+x.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .cardinality import CardinalityTable
from .codec import BitMessage, decode_codeword, encode_message
from .errors import FramingError, ParameterError, QaLocoError, at_frame
from .levels import CodeParams, Codeword, check_levels, scan_forbidden

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SymbolStream:
    """Levels as written to consecutive cells, plus the code they belong to."""

    params: CodeParams
    levels: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.levels)

    @property
    def codeword_count(self) -> int:
        return frame_count(len(self.levels), self.params.m, self.params.x)

    def frames(self) -> List[Codeword]:
        m, x = self.params.m, self.params.x
        return [self.levels[k * (m + x):k * (m + x) + m] for k in range(self.codeword_count)]

    def bridges(self) -> List[Codeword]:
        m, x = self.params.m, self.params.x
        return [self.levels[k * (m + x) - x:k * (m + x)] for k in range(1, self.codeword_count)]


def stream_length(n: int, m: int, x: int) -> int:
    return n * m + max(n - 1, 0) * x


def frame_count(length: int, m: int, x: int) -> int:
    """Number of codewords in a stream of the given length; FramingError if none fits."""
    if length == 0:
        return 0
    if (length + x) % (m + x):
        raise FramingError(
            f"stream length {length} is not n*{m} + (n-1)*{x} for any n"
        )
    return (length + x) // (m + x)


def run_bound(m: int, x: int) -> int:
    """Longest possible run in a self-clocked stream."""
    return 2 * (m - 1) + x


def bridging_pattern(prev_rms: int, next_lms: int, params: CodeParams) -> Codeword:
    e = params.e_level
    if prev_rms == e and next_lms == e:
        return (e,) * params.x
    return (0,) * params.x


def is_clocked_codeword(cw: Sequence[int], params: CodeParams) -> bool:
    """False for the two constant codewords 0^m and e^m."""
    levels = tuple(cw)
    if not levels:
        return False
    first = levels[0]
    if first not in (0, params.e_level):
        return True
    return any(a != first for a in levels)


class StreamEncoder:
    """Stitches codewords into a stream, remembering the last written RMS."""

    def __init__(self, params: CodeParams):
        self.params = params
        self.prev_rms: Optional[int] = None
        self.count = 0

    def push(self, cw: Sequence[int]) -> Codeword:
        """Levels to write for cw: its bridge (none for the first codeword) and cw."""
        cw = tuple(cw)
        if len(cw) != self.params.m:
            raise ParameterError(f"codeword length {len(cw)} != m = {self.params.m}")
        if self.prev_rms is None:
            out = cw
        else:
            out = bridging_pattern(self.prev_rms, cw[0], self.params) + cw
        self.prev_rms = cw[-1]
        self.count += 1
        return out


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(fn, items))
    return [fn(item) for item in items]


def encode_stream(
    messages: Iterable[BitMessage],
    table: CardinalityTable,
    m: int,
    workers: int = 1,
) -> SymbolStream:
    """Encode each message to a codeword and join them with bridges.

    Codewords are generated independently (optionally on a thread pool) and
    then stitched in order, since each bridge depends on the previous RMS.
    """
    params = CodeParams(table.q, m, table.x)
    messages = list(messages)
    codewords = _map(lambda bits: encode_message(bits, table, m), messages, workers)
    encoder = StreamEncoder(params)
    levels: List[int] = []
    for cw in codewords:
        levels.extend(encoder.push(cw))
    logger.debug("Encoded %d messages into %d symbols", len(messages), len(levels))
    return SymbolStream(params, tuple(levels))


def expected_bridges(frames: Sequence[Codeword], params: CodeParams) -> List[Codeword]:
    return [bridging_pattern(frames[k - 1][-1], frames[k][0], params) for k in range(1, len(frames))]


def decode_stream(
    stream,
    table: CardinalityTable,
    m: int,
    strict: bool = False,
    workers: int = 1,
) -> List[BitMessage]:
    """Split a stream into frames, skip the bridges and decode every frame.

    stream may be a SymbolStream or a plain level sequence. In strict mode
    each bridge must equal the one the encoder would have written.
    """
    params = CodeParams(table.q, m, table.x)
    raw = stream.levels if isinstance(stream, SymbolStream) else stream
    levels = check_levels(raw, table.q)
    sym = SymbolStream(params, levels)
    frames = sym.frames()
    if strict:
        for k, (got, want) in enumerate(zip(sym.bridges(), expected_bridges(frames, params)), start=1):
            if got != want:
                raise FramingError(
                    f"frame {k}: bridge {list(got)} does not match expected {list(want)}", frame=k
                )

    def _decode(item):
        k, frame = item
        try:
            return decode_codeword(frame, table)
        except QaLocoError as exc:
            raise at_frame(exc, k)

    return _map(_decode, list(enumerate(frames)), workers)


def max_run(levels: Sequence[int]) -> Tuple[int, int]:
    """(level, length) of the longest run of equal consecutive levels."""
    levels = tuple(levels.levels if isinstance(levels, SymbolStream) else levels)
    if not levels:
        raise ParameterError("max_run needs a non-empty stream")
    best_level, best = levels[0], 1
    run = 1
    for prev, cur in zip(levels, levels[1:]):
        run = run + 1 if cur == prev else 1
        if run > best:
            best_level, best = cur, run
    return best_level, best


def worst_case_stream(params: CodeParams, delta: int = 0) -> Codeword:
    """delta e^(m-1) | e^x | e^(m-1) delta: two clocked codewords with the longest run."""
    e = params.e_level
    if not 0 <= delta < e:
        raise ParameterError(f"delta must be a level below {e}, got {delta}")
    first = (delta,) + (e,) * (params.m - 1)
    second = (e,) * (params.m - 1) + (delta,)
    return first + bridging_pattern(first[-1], second[0], params) + second


def validate_stream(levels: Sequence[int], params: CodeParams, strict: bool = False) -> List[str]:
    """Every problem found in a written stream, as readable strings.

    Checks framing, forbidden patterns (with offsets), the run bound,
    constant codewords and, in strict mode, the bridges.
    """
    problems: List[str] = []
    try:
        levels = check_levels(levels, params.q)
    except QaLocoError as exc:
        return [str(exc)]
    for pos, gap in scan_forbidden(levels, params):
        pattern = " ".join(str(a) for a in levels[pos:pos + gap + 2])
        problems.append(f"forbidden pattern {pattern} at offset {pos}")
    if levels:
        level, run = max_run(levels)
        bound = run_bound(params.m, params.x)
        if run > bound:
            problems.append(f"run of {run} x level {level} exceeds bound {bound}")
    try:
        sym = SymbolStream(params, levels)
        frames = sym.frames()
    except FramingError as exc:
        problems.append(str(exc))
        return problems
    for k, frame in enumerate(frames):
        if not is_clocked_codeword(frame, params):
            problems.append(f"frame {k}: constant codeword {list(frame)} is not self-clocking")
    if strict:
        for k, (got, want) in enumerate(zip(sym.bridges(), expected_bridges(frames, params)), start=1):
            if got != want:
                problems.append(f"frame {k}: bridge {list(got)} does not match expected {list(want)}")
    return problems
