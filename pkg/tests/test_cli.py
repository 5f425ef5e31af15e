from __future__ import annotations

import io
import re
import subprocess
import sys
from pathlib import Path

from crystal_rigidity.cli import main

FIX = Path(__file__).parent / "fixtures"


def run(*argv):
    buf = io.StringIO()
    code = main([str(a) for a in argv], out=buf)
    return code, buf.getvalue()


def fields(text):
    out = {}
    for line in text.splitlines():
        if ": " in line:
            key, val = line.split(": ", 1)
            out.setdefault(key, val)
    return out


def test_check_laman_fixture():
    code, text = run("check", FIX / "gamma4_laman.txt", "--class", "laman")
    assert code == 0
    assert "gamma-colored-Laman: yes" in text


def test_check_identity_loop_prints_witness():
    code, text = run("check", FIX / "identity_loop.txt")
    assert code == 1
    f = fields(text)
    assert f["gamma-colored-Laman"] == "no"
    assert "witness" in f


def test_missing_file_and_bad_flags(tmp_path):
    assert run("check", tmp_path / "nope.txt")[0] == 2
    assert run("check", FIX / "gamma4_laman.txt", "--class", "cone22")[0] == 2
    assert run("check", FIX / "gamma4_laman.txt", "--edges", "9")[0] == 2
    assert run("rank", FIX / "gamma4_laman.txt", "--trials", "0")[0] == 2
    assert run("frobnicate")[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("group gamma 4\nvertices 2\nedge 1 3 (0,0) 0\n")
    assert run("check", bad)[0] == 2


def test_parse_error_goes_to_stderr_with_line(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("group gamma 4\nvertices 2\nedge 1 3 (0,0) 0\n")
    code, text = run("check", bad)
    assert code == 2 and text == ""
    assert "line 3" in capsys.readouterr().err


def test_witness_round_trip():
    for name in ("identity_loop.txt", "gamma4_flexible.txt", "gamma4_22.txt"):
        code, text = run("check", FIX / name)
        f = fields(text)
        assert code == 1
        assert int(f["witness-edges"]) > int(f["witness-bound"])
        ids = f["witness"].split()
        code2, text2 = run("check", FIX / name, "--edges", " ".join(ids))
        f2 = fields(text2)
        assert code2 == 1 and f2["sparse"] == "no"
        assert int(f2["edges"]) == len(ids)
        assert int(f2["witness-edges"]) > int(f2["witness-bound"])


def test_decomposition_printed():
    code, text = run("check", FIX / "gamma4_22.txt", "--class", "g22")
    assert code == 0
    f = fields(text)
    parts = f["part-1"].split() + f["part-2"].split()
    assert sorted(parts) == ["1", "2", "3", "4"]


def test_rank_report():
    code, text = run("rank", FIX / "gamma4_laman.txt")
    assert code == 0
    assert "rank 3 / 3 rows, nullity 1" in text


def test_realize_and_render(tmp_path):
    code, text = run("realize", FIX / "gamma4_laman.txt", "--seed", 7)
    assert code == 0
    assert re.search(r"^vertex 1: -?\d+\.\d+ -?\d+\.\d+$", text, re.M)
    assert "length 3:" in text
    svg = tmp_path / "lift.svg"
    code, text = run("render", FIX / "gamma4_laman.txt", "--box", -2, 2, -2, 2, "--out", svg)
    assert code == 0
    assert fields(text)["lift-vertices"] == str(25 * 4 * 1)
    body = svg.read_text()
    assert body.startswith("<svg") and body.count("<circle") == 100


def test_render_errors(tmp_path):
    svg = tmp_path / "x.svg"
    assert run("render", FIX / "gamma4_laman.txt", "--box", 1, 0, 0, 0, "--out", svg)[0] == 2
    assert run("render", FIX / "gamma4_laman.txt", "--box", -200, 200, -200, 200, "--out", svg)[0] == 2
    assert run("render", FIX / "gamma4_flexible.txt", "--out", svg)[0] == 1
    assert not svg.exists()


def test_realize_non_laman():
    assert run("realize", FIX / "gamma4_flexible.txt")[0] == 1


def test_circuit():
    code, text = run("circuit", FIX / "gamma4_22.txt")
    assert code == 0 and fields(text)["circuit"] == "3 4"
    code, text = run("circuit", FIX / "gamma4_laman.txt")
    assert code == 1 and "circuit: none" in text
    code, text = run("circuit", FIX / "identity_loop.txt")
    assert code == 0


def test_reports_are_deterministic(tmp_path):
    for argv in (
        ("check", FIX / "gamma2_two_vertex.txt"),
        ("rank", FIX / "cone3_laman.txt", "--seed", 11),
        ("realize", FIX / "gamma2_two_vertex.txt", "--seed", 3),
    ):
        assert run(*argv) == run(*argv)
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    run("render", FIX / "cone3_laman.txt", "--out", a)
    run("render", FIX / "cone3_laman.txt", "--out", b)
    assert a.read_text() == b.read_text()


def test_selftest_small_and_reproducible():
    argv = ("selftest", "--scale", "0.01", "--only", "1", "3", "10")
    code, text = run(*argv)
    assert code == 0
    assert text.count("[PASS]") == 3 and "failed: 0" in text
    assert run(*argv) == (code, text)


def test_selftest_detects_injected_fault():
    code, text = run("selftest", "--scale", "0.02", "--only", "5", "--inject", "r4-sign")
    assert code == 1
    assert "[FAIL] criterion 5" in text


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "crystal_rigidity", "check", str(FIX / "gamma4_laman.txt")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "gamma-colored-Laman: yes" in proc.stdout
