import logging
import sys

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def setup_logging(level: str = "INFO") -> logging.Logger:
    """Attach a single stderr handler to the package logger.

    Repeated calls replace the handler, so it always writes to the current
    sys.stderr even when an earlier one was swapped out and closed.
    """
    logger = logging.getLogger("qaloco")
    numeric = logging.getLevelName(str(level).upper())
    if not isinstance(numeric, int):
        raise RuntimeError(f"Unknown log level: {level}")
    logger.setLevel(numeric)
    for old in [h for h in logger.handlers if getattr(h, "_qaloco", False)]:
        # no close(): that would flush a stream that may already be closed
        logger.removeHandler(old)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._qaloco = True
    logger.addHandler(handler)
    logger.propagate = False
    return logger
