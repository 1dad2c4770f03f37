import io
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cherrypick import cli
from cherrypick.grid import Grid, StepProfile, generate_grid

from conftest import EXAMPLE, SMALL, grids


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = cli.main(argv)
    out = capsys.readouterr()
    records = [json.loads(line) for line in out.out.splitlines() if line.startswith("{")]
    return code, records, out


def write(tmp_path, g, fmt="plain", name="g.txt"):
    p = tmp_path / name
    p.write_text(cli.serialize(Grid(g), fmt))
    return str(p)


# ---------------------------------------------------------------- formats

@given(grids(lo=-50, hi=50, neg_inf=True), st.sampled_from(["plain", "structured"]))
def test_round_trip(g, fmt):
    parse = cli.parse_plain if fmt == "plain" else cli.parse_structured
    assert parse(cli.serialize(g, fmt))[0] == g


def test_round_trip_keeps_steps():
    g = generate_grid(3, 4, 0, 9, 1)
    steps = StepProfile((2, 0))
    for fmt, parse in (("plain", cli.parse_plain), ("structured", cli.parse_structured)):
        g2, s2 = parse(cli.serialize(g, fmt, steps))
        assert g2 == g and s2 == steps


def test_plain_comments_and_neg_inf():
    g, steps = cli.parse_plain("# header\n1 -inf  # trailing\n\n3 4\n")
    assert steps is None and g.rows()[1] == [3, 4] and g.has_neg_inf()


@pytest.mark.parametrize("text", ["1 x\n2 3\n", "1 2\n3\n", "5\n", "d: a\n1 2\n3 4\n"])
def test_plain_parse_errors(text):
    with pytest.raises(cli.ParseError):
        cli.parse_plain(text)


@pytest.mark.parametrize("text", ['{"H": 2}', '{"H": 2, "W": 2, "cells": [[1, 2], [3, 4], [5, 6]]}',
                                  '{"H": 2, "W": 2, "cells": [[1, 2.5], [3, 4]]}', "not json"])
def test_structured_parse_errors(text):
    with pytest.raises(cli.ParseError):
        cli.parse_structured(text)


# ---------------------------------------------------------------- solve

@pytest.mark.parametrize("algo", sorted(cli.SOLVERS))
def test_solve_example_every_algo(capsys, tmp_path, algo):
    code, recs, _ = run(capsys, ["solve", "--input", write(tmp_path, EXAMPLE), "--algo", algo])
    assert code == 0 and recs[0]["total"] == 24 and recs[0]["algo"] == algo


def test_solve_stdin_structured_and_witness(capsys, monkeypatch):
    text = cli.serialize(Grid(SMALL), "structured")
    code, recs, _ = run(capsys, ["solve", "--format", "structured", "--witness"], text, monkeypatch)
    assert code == 0 and recs[0]["total"] == 10
    assert recs[0]["left"] == [0, 0] and recs[0]["right"] == [1, 1]


def test_solve_debug_four_case(capsys, tmp_path):
    code, recs, _ = run(capsys, ["solve", "--input", write(tmp_path, EXAMPLE), "--debug-four-case"])
    assert code == 0 and recs[0]["total"] == 24


def test_solve_extended_with_steps(capsys, tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("d: 0 0\n1 5 2\n1 5 2\n1 5 2\n")
    code, recs, _ = run(capsys, ["solve", "--input", str(p), "--algo", "extended"])
    assert code == 0 and recs[0]["total"] == 9
    code, _, out = run(capsys, ["solve", "--input", str(p), "--algo", "linear"])
    assert code == 2 and "unit steps" in out.err


def test_solve_exit_codes(capsys, tmp_path):
    code, _, out = run(capsys, ["solve", "--input", str(tmp_path / "missing.txt")])
    assert code == 2 and "cannot read" in out.err
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n3 z\n")
    assert run(capsys, ["solve", "--input", str(bad)])[0] == 2
    big = write(tmp_path, np.ones((9, 9), dtype=np.int64))
    code, _, out = run(capsys, ["solve", "--input", big, "--algo", "exhaustive"])
    assert code == 3 and "limited" in out.err
    inf = write(tmp_path, [[1, 2, 3], [4, "-inf", 5]])
    assert run(capsys, ["solve", "--input", inf, "--algo", "suurballe"])[0] == 3
    code, recs, _ = run(capsys, ["solve", "--input", inf])
    assert code == 0 and recs[0]["total"] == 13


def test_neg_inf_total_is_spelled(capsys, tmp_path):
    g = write(tmp_path, [[1, 2, 3], ["-inf", "-inf", "-inf"], [1, 1, 1]])
    code, recs, _ = run(capsys, ["solve", "--input", g, "--witness"])
    assert code == 0 and recs[0]["total"] == "-inf" and "left" not in recs[0]


# ---------------------------------------------------------------- verify

def test_verify_all_agree(capsys):
    code, recs, _ = run(capsys, ["verify", "--count", "60", "--hmax", "10", "--wmax", "10"])
    assert code == 0 and recs[-1]["status"] == "all agree"
    code, recs, _ = run(capsys, ["verify", "--count", "30", "--hmax", "2", "--wmax", "2"])
    assert code == 0 and recs[-1]["status"] == "all agree"


def test_verify_signed(capsys):
    code, recs, _ = run(capsys, ["verify", "--count", "40", "--lo", "-9", "--hi", "9", "--hmax", "7"])
    assert code == 0


def test_verify_reports_injected_fault(capsys, monkeypatch):
    real = cli.SOLVERS["fast"]

    def broken(g, steps=None):
        res = real(g)
        return res.total + (1 if g.W > 3 else 0)

    monkeypatch.setitem(cli.SOLVERS, "fast", broken)
    code, recs, _ = run(capsys, ["verify", "--count", "50", "--seed", "3"])
    assert code == 1
    rec = recs[-1]
    assert rec["status"] == "mismatch" and rec["W"] > 3
    g = generate_grid(rec["H"], rec["W"], rec["lo"], rec["hi"], rec["instance_seed"])
    assert g.rows() == rec["grid"]


def test_verify_is_deterministic(capsys):
    a = run(capsys, ["verify", "--count", "20", "--seed", "9"])[1]
    b = run(capsys, ["verify", "--count", "20", "--seed", "9"])[1]
    assert a == b


def test_verify_rejects_bad_bounds(capsys):
    assert run(capsys, ["verify", "--hmax", "1"])[0] == 2
    assert run(capsys, ["verify", "--lo", "5", "--hi", "1"])[0] == 2


# ---------------------------------------------------------------- bench

def test_bench_single_size_undefined_and_deterministic(capsys):
    argv = ["bench", "--sizes", "64", "--reps", "1", "--warmup", "0"]
    code, recs, _ = run(capsys, argv)
    assert code == 0 and recs[-1]["slope"] == "undefined" and recs[-1]["within_band"] is None
    again = run(capsys, argv)[1]
    assert recs[0]["checksum"] == again[0]["checksum"]


def test_bench_slope_band_sets_exit_code(capsys):
    base = ["bench", "--sizes", "64,128", "--reps", "1", "--warmup", "0"]
    code, recs, _ = run(capsys, base + ["--slope-min", "-100", "--slope-max", "100"])
    assert code == 0 and isinstance(recs[-1]["slope"], float)
    code, _, _ = run(capsys, base + ["--slope-min", "50", "--slope-max", "60"])
    assert code == 1
    assert run(capsys, ["bench", "--sizes", "32"])[0] == 2


# ---------------------------------------------------------------- dm / robots2 / generate

@pytest.mark.parametrize("dm,total,reachable", [
    ([[0, 1], [1, 0]], 2, True),
    ([[0, -1], [-1, 0]], 0, False),
    ([[1, 1], [1, 1]], 4, True),
])
def test_dm_delegation(capsys, tmp_path, dm, total, reachable):
    code, recs, _ = run(capsys, ["dm", "--input", write(tmp_path, dm)])
    assert code == 0 and recs[0]["total"] == total and recs[0]["reachable"] is reachable


def test_dm_bad_input(capsys, tmp_path):
    assert run(capsys, ["dm", "--input", write(tmp_path, [[0, 5], [0, 0]])])[0] == 2


def test_robots2_delegation(capsys, tmp_path):
    p = write(tmp_path, EXAMPLE)
    code, recs, _ = run(capsys, ["robots2", "--input", p, "--j1", "0", "--j2", "2"])
    assert code == 0 and recs[0]["total"] == 24
    zero = write(tmp_path, np.zeros((3, 20), dtype=np.int64), name="z.txt")
    code, recs, _ = run(capsys, ["robots2", "--input", zero, "--j1", "2", "--j2", "15"])
    assert code == 0 and recs[0]["total"] == 0
    assert run(capsys, ["robots2", "--input", p, "--j1", "2", "--j2", "1"])[0] == 2


def test_generate(capsys):
    code, _, out = run(capsys, ["generate", "--h", "2", "--w", "2", "--seed", "7", "--lo", "0", "--hi", "0"])
    assert code == 0 and out.out == "0 0\n0 0\n"
    code, _, out = run(capsys, ["generate", "--h", "3", "--w", "4", "--format", "structured"])
    assert cli.parse_structured(out.out)[0] == generate_grid(3, 4, 0, 9, 0)
    assert run(capsys, ["generate", "--h", "1", "--w", "4"])[0] == 2
