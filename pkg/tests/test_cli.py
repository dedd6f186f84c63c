#!/usr/bin/env python3
"""End-to-end runs of manage.py subcommands."""

import io
import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from manage import EXIT_DATA, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main
from qaloco.log import setup_logging

CODE = ["--q", "4", "--m", "6", "--x", "1"]


def _run(args, capsys):
    status = main(["--log-level", "WARNING"] + args)
    out, err = capsys.readouterr()
    return status, out, err


def test_encode_example(tmp_path, capsys):
    src = tmp_path / "msgs.txt"
    src.write_text("11011001110\n")
    status, out, err = _run(["encode", *CODE, "--in", str(src)], capsys)
    assert status == EXIT_OK, err
    assert out == "1 3 3 1 0 2\n"


def test_decode_example(tmp_path, capsys):
    src = tmp_path / "stream.txt"
    src.write_text("1 3 3 1 0 2\n")
    status, out, err = _run(["decode", *CODE, "--in", str(src)], capsys)
    assert status == EXIT_OK, err
    assert out == "11011001110\n"


@pytest.mark.parametrize("fmt", ["text", "binary"])
def test_roundtrip_file(tmp_path, capsys, fmt):
    src = tmp_path / "msgs.txt"
    lines = ["11011001110" * 3, "", "0" * 11, "10101010101" + "1" * 11]
    src.write_text("".join(line + "\n" for line in lines))
    enc = tmp_path / "stream.out"
    dec = tmp_path / "msgs.out"
    status, _, err = _run(["encode", *CODE, "--format", fmt, "--in", str(src), "--out", str(enc)], capsys)
    assert status == EXIT_OK, err
    status, _, err = _run(["decode", *CODE, "--format", fmt, "--strict", "--in", str(enc), "--out", str(dec)],
                          capsys)
    assert status == EXIT_OK, err
    assert dec.read_bytes() == src.read_bytes()


def test_empty_input(tmp_path, capsys):
    src = tmp_path / "empty.txt"
    src.write_text("")
    status, out, _ = _run(["encode", *CODE, "--in", str(src)], capsys)
    assert status == EXIT_OK
    assert out == ""


def test_encode_rejects_partial_message(tmp_path, capsys):
    src = tmp_path / "msgs.txt"
    src.write_text("110110011101\n")
    status, out, err = _run(["encode", *CODE, "--in", str(src)], capsys)
    assert status == EXIT_DATA
    assert "s^c = 11" in err and "line 1" in err
    assert out == ""


def test_encode_rejects_bad_characters(tmp_path, capsys):
    src = tmp_path / "msgs.txt"
    src.write_text("1101100111a\n")
    status, _, err = _run(["encode", *CODE, "--in", str(src)], capsys)
    assert status == EXIT_DATA
    assert "invalid character" in err


def test_decode_constant_frame(tmp_path, capsys):
    src = tmp_path / "stream.txt"
    src.write_text("1 3 3 1 0 2\n0 0 0 0 0 0\n")
    status, _, err = _run(["decode", *CODE, "--in", str(src)], capsys)
    assert status == EXIT_DATA
    assert "line 2: frame 0: non-message codeword" in err


def test_params(capsys):
    status, out, _ = _run(["params", *CODE], capsys)
    assert status == EXIT_OK
    assert "N = 3409" in out
    assert "s^c = 11" in out
    assert "k_eff = 11" in out

    status, out, _ = _run(["params", "--q", "4", "--m", "9", "--x", "1"], capsys)
    assert "N = 191518" in out
    assert "s^c = 17" in out
    assert "rate = 1.7000" in out
    assert "omitted codewords (binary messages) = 60444" in out
    assert "omitted codewords (4-ary messages) = 125980" in out

    status, out, _ = _run(["params", "--q", "2", "--m", "2", "--x", "1"], capsys)
    assert status == EXIT_OK
    assert "N = 4" in out


def test_params_rejects_bad_code(capsys):
    status, _, err = _run(["params", "--q", "1", "--m", "6", "--x", "1"], capsys)
    assert status == EXIT_USAGE
    assert "q must be >= 2" in err


def test_tables_csv(capsys):
    status, out, _ = _run(["tables", "--x", "1", "--csv"], capsys)
    assert status == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "q,m,x,s_c,rate,normalized_rate,capacity"
    assert len(lines) == 21
    assert lines[1].startswith("4,14,1,27,1.8000,0.9000,")


def test_tables_text(capsys):
    status, out, _ = _run(["tables"], capsys)
    assert status == EXIT_OK
    assert "x = 1" in out and "x = 2" in out
    assert "capacity q=32: " in out


def test_capacity(capsys):
    status, out, _ = _run(["capacity", "--q", "8", "--x", "2"], capsys)
    assert status == EXIT_OK
    value = float(re.search(r"x=2: ([0-9.]+) bits/symbol", out).group(1))
    assert abs(value - 2.9675) <= 1e-4


def test_check_flags_injected_pattern(tmp_path, capsys):
    src = tmp_path / "stream.txt"
    src.write_text("1 3 3 1 0 3 1 3 3 3 1 0 3\n")
    status, out, _ = _run(["check", *CODE, "--in", str(src)], capsys)
    assert status == EXIT_VERIFY
    assert "line 1: forbidden pattern 3 1 3 at offset 5" in out


def test_check_names_unparsable_line(tmp_path, capsys):
    src = tmp_path / "stream.txt"
    src.write_text("1 3 3 1 0 2\n1 3 4 1 0 2\n")
    status, out, _ = _run(["check", *CODE, "--in", str(src)], capsys)
    assert status == EXIT_VERIFY
    assert "line 2: " in out and "position 2" in out


def test_check_clean_stream(tmp_path, capsys):
    src = tmp_path / "stream.txt"
    src.write_text("1 3 3 1 0 2 0 1 3 3 1 0 3\n")
    status, out, _ = _run(["check", *CODE, "--strict", "--in", str(src)], capsys)
    assert status == EXIT_OK
    assert out.strip() == "OK"


def test_check_oracle(capsys):
    status, out, _ = _run(["check", "--oracle", "--q", "4", "--m", "5", "--x", "2"], capsys)
    assert status == EXIT_OK
    assert "OK" in out


def test_repeated_runs_log_to_current_stderr(tmp_path, capsys):
    src = tmp_path / "msgs.txt"
    src.write_text("11011001110\n")
    for _ in range(3):
        status = main(["--log-level", "INFO", "encode", *CODE, "--in", str(src)])
        out, err = capsys.readouterr()
        assert status == EXIT_OK, err
        assert out == "1 3 3 1 0 2\n"
        assert "INFO qaloco.cli: Encoded 1 codewords in 1 streams" in err


def test_setup_logging_survives_closed_stream(monkeypatch):
    stale = io.StringIO()
    monkeypatch.setattr(sys, "stderr", stale)
    setup_logging("INFO")
    stale.close()
    fresh = io.StringIO()
    monkeypatch.setattr(sys, "stderr", fresh)
    logger = setup_logging("INFO")
    logger.info("still writing")
    handlers = [h for h in logger.handlers if getattr(h, "_qaloco", False)]
    assert len(handlers) == 1, "one package handler after repeated setup"
    assert "INFO qaloco: still writing" in fresh.getvalue()


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["encode", "--q", "four"])
    assert info.value.code == EXIT_USAGE


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
