#!/usr/bin/env python3
"""Command-line front end for the QA-LOCO codec.

Exit status: 0 success, 1 usage or parameter error, 2 data error,
3 verification failure (check).
"""
import argparse
import logging
import sys
from pathlib import Path

from qaloco.analysis import (
    adder_width,
    capacity,
    format_rate_table,
    generate_rate_table,
    int_log,
    normalized_capacity,
    omitted_codeword_count,
    rate,
)
from qaloco.codec import QaLocoCodec
from qaloco.config import get_config
from qaloco.errors import InstanceTooLargeError, ParameterError, QaLocoError, at_line
from qaloco.formats import format_text_line, parse_text_line, read_binary, read_text, write_binary
from qaloco.levels import CodeParams
from qaloco.log import setup_logging
from qaloco.oracle import cross_check
from qaloco.stream import decode_stream, encode_stream, run_bound, validate_stream

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_VERIFY = 3

logger = logging.getLogger("qaloco.cli")


class CliParser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; usage errors here are exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _read_input(path, binary: bool):
    if path:
        p = Path(path)
        return p.read_bytes() if binary else p.read_text()
    return sys.stdin.buffer.read() if binary else sys.stdin.read()


def _write_output(path, payload) -> None:
    if path:
        p = Path(path)
        if isinstance(payload, bytes):
            p.write_bytes(payload)
        else:
            p.write_text(payload)
        return
    if isinstance(payload, bytes):
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    else:
        sys.stdout.write(payload)


def _codec(args) -> QaLocoCodec:
    return QaLocoCodec(args.q, args.m, args.x, m_max=args.config['QALOCO_M_MAX'])


def encode(args):
    """Encode bit lines into symbol streams, one stream per input line."""
    codec = _codec(args)
    s = codec.message_length
    report = rate(codec.params, codec.table)
    logger.info("q=%d m=%d x=%d: s^c = %d, rate %.4f", codec.q, codec.m, codec.x, s, report.rate)
    streams = []
    total = 0
    for lineno, line in enumerate(_read_input(args.input, binary=False).splitlines(), start=1):
        bad = next((ch for ch in line if ch not in "01"), None)
        if bad is not None:
            _err(f"line {lineno}: invalid character {bad!r}, messages are 0/1 only")
            return EXIT_DATA
        if len(line) % s:
            _err(f"line {lineno}: length {len(line)} is not a multiple of s^c = {s}")
            return EXIT_DATA
        messages = [line[k:k + s] for k in range(0, len(line), s)]
        streams.append(encode_stream(messages, codec.table, codec.m, workers=args.workers))
        total += len(messages)
    logger.info("Encoded %d codewords in %d streams", total, len(streams))
    if args.format == "binary":
        _write_output(args.output, write_binary(streams))
    else:
        _write_output(args.output, "".join(format_text_line(st.levels) + "\n" for st in streams))
    return EXIT_OK


def decode(args):
    """Decode symbol streams back into bit lines."""
    codec = _codec(args)
    lines = []
    if args.format == "binary":
        try:
            streams = read_binary(_read_input(args.input, binary=True))
        except QaLocoError as exc:
            _err(f"error: {exc}")
            return EXIT_DATA
        for k, st in enumerate(streams, start=1):
            if st.params != codec.params:
                _err(f"record {k}: stream is q={st.params.q} m={st.params.m} x={st.params.x}, "
                     f"expected q={codec.q} m={codec.m} x={codec.x}")
                return EXIT_DATA
        sources = [(k, st.levels) for k, st in enumerate(streams, start=1)]
        where = "record"
    else:
        try:
            sources = list(enumerate(read_text(_read_input(args.input, binary=False), codec.q), start=1))
        except QaLocoError as exc:
            _err(str(exc))
            return EXIT_DATA
        where = "line"
    for k, levels in sources:
        try:
            messages = decode_stream(levels, codec.table, codec.m, strict=args.strict, workers=args.workers)
        except QaLocoError as exc:
            _err(str(at_line(exc, k)) if where == "line" else f"{where} {k}: {exc}")
            return EXIT_DATA
        lines.append("".join(messages))
    logger.info("Decoded %d streams", len(lines))
    _write_output(args.output, "".join(line + "\n" for line in lines))
    return EXIT_OK


def params(args):
    """Print cardinality, message length, rate and run bound for (q, m, x)."""
    codec = _codec(args)
    q, m, x = codec.q, codec.m, codec.x
    clocked = codec.table.clocked_cardinality(m)
    report = rate(codec.params, codec.table)
    print(f"q = {q}, m = {m}, x = {x}")
    print(f"N = {codec.cardinality}")
    print(f"N - 2 = {clocked}")
    print(f"s^c = {report.s}")
    print(f"rate = {report.rate:.4f}")
    print(f"normalized rate = {report.normalized_rate:.4f}")
    print(f"k_eff = {run_bound(m, x)}")
    print(f"adder width = {adder_width(codec.table, m)}")
    print(f"omitted codewords (binary messages) = {omitted_codeword_count(codec.params, codec.table, 2)}")
    if q != 2:
        print(f"q-ary message symbols = {int_log(clocked, q)}")
        print(f"omitted codewords ({q}-ary messages) = {omitted_codeword_count(codec.params, codec.table, q)}")
    print(f"capacity = {report.capacity:.4f}")
    return EXIT_OK


def tables(args):
    """Regenerate the rate tables from the configured grids."""
    grids = args.config['rate_grids']
    xs = [args.table_x] if args.table_x else sorted(grids)
    rows_by_x = {}
    for x in xs:
        if x not in grids:
            raise ParameterError(f"no rate grid configured for x={x}")
        grid = grids[x]
        rows_by_x[x] = generate_rate_table(sorted(grid), x, grid)
    if args.csv:
        print(format_rate_table([r for x in xs for r in rows_by_x[x]], as_csv=True), end="")
        return EXIT_OK
    for x in xs:
        print(f"x = {x}")
        print(format_rate_table(rows_by_x[x]), end="")
        for q in sorted(grids[x]):
            print(f"capacity q={q}: {capacity(q, x):.4f} (normalized {normalized_capacity(q, x):.4f})")
        print()
    return EXIT_OK


def capacity_cmd(args):
    """Print the capacity of the constraint for (q, x)."""
    CodeParams(args.q, 1, args.x)
    print(f"capacity q={args.q} x={args.x}: {capacity(args.q, args.x):.4f} bits/symbol, "
          f"normalized {normalized_capacity(args.q, args.x):.4f}")
    return EXIT_OK


def check(args):
    """Validate a stream file, or cross-check the codec against brute force."""
    problems = []
    if args.oracle:
        p = CodeParams(args.q, args.m, args.x)
        try:
            problems = cross_check(p, limit=args.config['QALOCO_ENUM_LIMIT'])
        except InstanceTooLargeError as exc:
            _err(f"error: {exc}")
            return EXIT_USAGE
    else:
        p = CodeParams(args.q, args.m, args.x)
        items = []
        if args.format == "binary":
            try:
                streams = read_binary(_read_input(args.input, binary=True))
                items = [(f"record {k}", st.levels, st.params) for k, st in enumerate(streams, start=1)]
            except QaLocoError as exc:
                problems.append(str(exc))
        else:
            text = _read_input(args.input, binary=False)
            for lineno, line in enumerate(text.splitlines(), start=1):
                try:
                    items.append((f"line {lineno}", parse_text_line(line, p.q), p))
                except QaLocoError as exc:
                    problems.append(str(at_line(exc, lineno)))
        for label, levels, sp in items:
            problems.extend(f"{label}: {msg}" for msg in validate_stream(levels, sp, strict=args.strict))
    for msg in problems:
        print(msg)
    if problems:
        _err(f"{len(problems)} violations")
        return EXIT_VERIFY
    print("OK")
    return EXIT_OK


def serve(args):
    """Run the HTTP service."""
    import uvicorn

    print(f"Open in browser: http://{args.host}:{args.port}")
    uvicorn.run("qaloco.web:app", host=args.host, port=args.port, reload=args.reload)
    return EXIT_OK


def _add_code_args(p, config):
    p.add_argument("--q", type=int, default=config['QALOCO_Q'], help="Alphabet size (levels per cell)")
    p.add_argument("--m", type=int, default=config['QALOCO_M'], help="Codeword length")
    p.add_argument("--x", type=int, default=config['QALOCO_X'], help="Longest forbidden gap")


def _add_io_args(p, config):
    p.add_argument("--in", dest="input", default=None, help="Input path (default: stdin)")
    p.add_argument("--out", dest="output", default=None, help="Output path (default: stdout)")
    p.add_argument("--format", choices=["text", "binary"], default=config['QALOCO_FORMAT'],
                   help="Stream format")
    p.add_argument("--workers", type=int, default=config['QALOCO_WORKERS'],
                   help="Threads per stream (default from QALOCO_WORKERS)")


def build_parser(config=None):
    config = config or get_config()
    parser = CliParser(description="QA-LOCO constrained codes for multi-level Flash")
    parser.add_argument("--log-level", default=config['QALOCO_LOG_LEVEL'], help="Logging level")
    sub = parser.add_subparsers(dest="cmd", parser_class=CliParser)

    p_encode = sub.add_parser("encode", help="Encode bit lines into symbol streams")
    _add_code_args(p_encode, config)
    _add_io_args(p_encode, config)
    p_encode.set_defaults(func=encode)

    p_decode = sub.add_parser("decode", help="Decode symbol streams into bit lines")
    _add_code_args(p_decode, config)
    _add_io_args(p_decode, config)
    p_decode.add_argument("--strict", action="store_true", default=config['QALOCO_STRICT'],
                          help="Reject streams whose bridges differ from the encoder's")
    p_decode.set_defaults(func=decode)

    p_params = sub.add_parser("params", help="Print code parameters")
    _add_code_args(p_params, config)
    p_params.set_defaults(func=params)

    p_tables = sub.add_parser("tables", help="Print rate tables")
    p_tables.add_argument("--x", dest="table_x", type=int, default=None,
                          help="Only the table for this x (default: all configured)")
    p_tables.add_argument("--csv", action="store_true", help="CSV instead of aligned text")
    p_tables.set_defaults(func=tables)

    p_capacity = sub.add_parser("capacity", help="Print the constraint capacity")
    p_capacity.add_argument("--q", type=int, default=config['QALOCO_Q'])
    p_capacity.add_argument("--x", type=int, default=config['QALOCO_X'])
    p_capacity.set_defaults(func=capacity_cmd)

    p_check = sub.add_parser("check", help="Validate a stream file or run the brute-force cross-check")
    _add_code_args(p_check, config)
    _add_io_args(p_check, config)
    p_check.add_argument("--strict", action="store_true", default=config['QALOCO_STRICT'],
                         help="Also check every bridge")
    p_check.add_argument("--oracle", action="store_true",
                         help="Cross-check recursion and codec against enumeration for (q, m, x)")
    p_check.set_defaults(func=check)

    p_serve = sub.add_parser("serve", help="Start the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=config['QALOCO_PORT'], help="Server port")
    p_serve.add_argument("--reload", action="store_true",
                         help="Enable auto-reload on code changes (useful for development)")
    p_serve.set_defaults(func=serve)

    p_help = sub.add_parser("help", help="Show help for commands")
    p_help.set_defaults(func=lambda args, p=parser: p.print_help() or EXIT_OK)
    return parser


def main(argv=None):
    config = get_config()
    parser = build_parser(config)
    args = parser.parse_args(argv)
    args.config = config
    try:
        setup_logging(args.log_level)
    except RuntimeError as exc:
        _err(f"error: {exc}")
        return EXIT_USAGE
    if not hasattr(args, "func"):
        parser.print_help()
        return EXIT_USAGE
    try:
        return args.func(args)
    except ParameterError as exc:
        _err(f"error: {exc}")
        return EXIT_USAGE
    except QaLocoError as exc:
        _err(f"error: {exc}")
        return EXIT_DATA
    except OSError as exc:
        _err(f"error: {exc}")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
