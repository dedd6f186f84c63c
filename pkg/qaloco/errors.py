"""Exception hierarchy for the QA-LOCO codec.

Every error raised by the library derives from QaLocoError so callers (the
CLI and the web service) can map the whole family to one exit code or status.
"""

from __future__ import annotations

from typing import List, Optional, Tuple


class QaLocoError(ValueError):
    """Base class for all codec errors."""

    frame: Optional[int] = None
    line: Optional[int] = None


class InvalidSymbolError(QaLocoError):
    pass


class InvalidLevelError(QaLocoError):
    pass


class ParameterError(QaLocoError):
    pass


class TableRangeError(QaLocoError, IndexError):
    pass


class InvalidCodewordError(QaLocoError):
    """A level sequence contains forbidden patterns."""

    def __init__(self, message: str, hits: Optional[List[Tuple[int, int]]] = None):
        super().__init__(message)
        self.hits = hits or []


class MessageSpaceError(QaLocoError):
    """A valid codeword whose index carries no message (0^m, e^m, or above 2^s)."""

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class FramingError(QaLocoError):
    def __init__(self, message: str, frame: Optional[int] = None, line: Optional[int] = None):
        super().__init__(message)
        self.frame = frame
        self.line = line


class InstanceTooLargeError(QaLocoError):
    pass


class WordNotFoundError(QaLocoError, LookupError):
    pass


class NumericalError(QaLocoError, RuntimeError):
    pass


def at_frame(exc: QaLocoError, frame: int) -> QaLocoError:
    """Tag exc with the stream frame it came from and prefix its message."""
    exc.frame = frame
    exc.args = (f"frame {frame}: {exc.args[0] if exc.args else exc}",) + tuple(exc.args[1:])
    return exc


def at_line(exc: QaLocoError, line: int) -> QaLocoError:
    """Tag exc with the 1-based input line it came from and prefix its message."""
    exc.line = line
    exc.args = (f"line {line}: {exc.args[0] if exc.args else exc}",) + tuple(exc.args[1:])
    return exc
