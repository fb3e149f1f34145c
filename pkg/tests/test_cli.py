"""Command-line front end: parsing, errors, goldens, determinism."""

import io
import subprocess
import sys

import pytest

from cli_demo import DEMO_EXPECTED, DEMO_SCRIPT
from liepar.cli import CommandError, Session, parse_central
from liepar import from_type, trivial_inner_class


def run_session(script, threads=1, verbose=False):
    out = io.StringIO()
    session = Session(out, verbose=verbose, threads=threads)
    session.run(io.StringIO(script))
    return out.getvalue()


def test_demo_script_golden():
    assert run_session(DEMO_SCRIPT) == DEMO_EXPECTED


def test_demo_script_deterministic():
    runs = [run_session(DEMO_SCRIPT) for _ in range(2)]
    runs += [run_session(DEMO_SCRIPT, threads=k) for k in (4, 8)]
    assert all(r == runs[0] for r in runs)


def test_cmd_file_subprocess(tmp_path):
    script = tmp_path / "cmds.txt"
    script.write_text(DEMO_SCRIPT)
    outs = []
    for k in ("1", "4", "8"):
        proc = subprocess.run(
            [sys.executable, "-m", "liepar.cli",
             "--cmd-file", str(script), "--threads", k],
            capture_output=True, text=True, timeout=300)
        assert proc.returncode == 0, proc.stderr
        outs.append(proc.stdout)
    assert outs[0] == DEMO_EXPECTED
    assert outs[1] == outs[0] and outs[2] == outs[0]


def test_stdin_batch(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "liepar.cli"],
        input="type A1 sc\ninner c\nX\n",
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "X size: 5" in proc.stdout


def test_verbose_adds_timings():
    out = run_session("type A1 sc\ninner c\n", verbose=True)
    assert out.count("# ") == 2
    assert "root datum" in out


def test_errors_do_not_stop_the_session():
    out = run_session("X\ntype A1 sc\ninner c\nX\n")
    assert out.startswith("error (line 1): no root datum")
    assert "X size: 5" in out


def test_error_line_numbers_accumulate():
    out = run_session("\n\nbogus\n")
    assert "error (line 3" in out


def test_inner_before_type():
    out = run_session("inner c\n")
    assert "no root datum" in out


def test_inner_u_requires_unique_involution():
    out = run_session("type A1 sc\ninner u\n")
    assert "error" in out and "diagram involution" in out
    out2 = run_session("type A3 sc\ninner u\nstrongreal\n")
    assert "diagram permutation 3,2,1" in out2


def test_inner_perm():
    out = run_session("type A2 sc\ninner 2,1\nX\n")
    assert "diagram permutation 2,1" in out
    assert "X size: 4" in out
    out2 = run_session("type A2 sc\ninner 1,2\nX\n")
    assert "diagram permutation 1,2" in out2


def test_parse_central():
    ic = trivial_inner_class(from_type("A1", "sc"))
    assert parse_central(ic, "1").entries == (0,)
    assert str(parse_central(ic, "-1").entries[0]) == "1/2"
    assert parse_central(ic, "1/2").entries[0] == \
        parse_central(ic, "-1").entries[0]
    with pytest.raises(CommandError):
        parse_central(ic, "1/3")        # not central
    with pytest.raises(CommandError):
        parse_central(ic, "1/2,1/2")    # wrong rank
    with pytest.raises(CommandError):
        parse_central(ic, "pi")
    ad = trivial_inner_class(from_type("A1", "ad"))
    with pytest.raises(CommandError):
        parse_central(ad, "-1")         # no central element of order 2


def test_matrix_mode_identity_is_sc():
    out = run_session("type C2 matrix\n1,0;0,1\ninner c\nX\n")
    assert "rank 2, 4 positive roots" in out
    assert "X size: 17" in out


def test_matrix_mode_rejects_bad_basis():
    out = run_session("type A1 matrix\n0\n")
    assert "singular" in out
    out2 = run_session("type A1 matrix\n1,0\n")
    assert "must be 1x1" in out2
    # root lattice not contained in the span
    out3 = run_session("type A1 matrix\n3\n")
    assert "not contained" in out3


def test_dot_command(tmp_path):
    path = tmp_path / "graph.dot"
    out = run_session(f"type A1 sc\ninner c\ndot X {path}\n")
    assert f"wrote {path}" in out
    text = path.read_text()
    assert text.startswith("digraph") and "->" in text


def test_quit_stops():
    out = run_session("type A1 sc\nquit\ntype A2 sc\n")
    assert "A2" not in out
