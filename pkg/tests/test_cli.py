"""CLI behaviour and golden transcripts.

Regenerate transcripts after an intended output change with
``python3 tests/test_cli.py --regen``.
"""
import subprocess
import sys
from pathlib import Path

import pytest

from handlecalc.cli import run

GOLDEN = Path(__file__).parent / "golden"
INPUTS = GOLDEN / "inputs"

# name -> (argv, input file)
CASES = {
    "check_trivial": (["check"], "trivial2.txt"),
    "check_ak2": (["check"], "ak2.txt"),
    "check_witnesses": (["check"], "encase.txt"),
    "check_bad_witness": (["check"], "badwitness.txt"),
    "check_multicork": (["check"], "multicork.txt"),
    "invariants_ak2": (["invariants"], "ak2.txt"),
    "invariants_groups": (["invariants", "--groups", str(INPUTS / "z5.txt")], "certsearch.txt"),
    "move_script": (["move"], "moves.txt"),
    "slide_single": (["slide", "-i", "1", "-j", "2", "--path", "x"], "bi.txt"),
    "slide_general": (["slide", "-i", "2", "-j", "1", "--path", "y^-1", "--dual-path", "v", "--sign", "-1"], "bi.txt"),
    "slide_double": (["slide", "-i", "1", "-j", "2", "--path", "x", "--double"], "bi.txt"),
    "pinwheel": (["pinwheel"], "multicork.txt"),
    "twist_mixed": (["twist", "-j", "1"], "pinwheel.txt"),
    "twist_constant": (["twist", "-j", "1"], "constant_pinwheel.txt"),
    "encase": (["encase"], "encase.txt"),
    "encase_bad_witness": (["encase"], "badwitness.txt"),
    "scramble": (["scramble", "-k", "5", "--seed", "4"], "trivial2.txt"),
    "scramble_stable": (["scramble", "-k", "4", "--seed", "9", "--stable", "--max-generators", "3"], "trivial2.txt"),
    "trivialize": (["trivialize", "--bfs-depth", "5"], "scrambled.txt"),
    "trivialize_ak2": (["trivialize"], "ak2.txt"),
    "certsearch": (["certsearch"], "certsearch.txt"),
    "parse_error": (["check"], "parse_error.txt"),
}
SEARCHING = ["scramble", "scramble_stable", "trivialize", "trivialize_ak2", "certsearch"]


def transcript(argv, infile):
    code, out, err = run(argv + ["--input", str(INPUTS / infile)])
    return out + err + f"exit: {code}\n"


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    argv, infile = CASES[name]
    expected = (GOLDEN / f"{name}.out").read_text()
    assert transcript(argv, infile) == expected
    assert transcript(argv, infile) == expected


@pytest.mark.parametrize("name", SEARCHING)
def test_golden_independent_of_workers(name):
    argv, infile = CASES[name]
    expected = (GOLDEN / f"{name}.out").read_text()
    assert transcript(argv + ["--workers", "2"], infile) == expected


def test_exit_codes():
    assert run(["check", "--input", str(INPUTS / "trivial2.txt")])[0] == 0
    assert run(["check", "--input", str(INPUTS / "badwitness.txt")])[0] == 1
    assert run(["trivialize", "--input", str(INPUTS / "ak2.txt")])[0] == 2
    assert run(["check", "--input", str(INPUTS / "parse_error.txt")])[0] == 3
    assert run(["check", "--input", str(INPUTS / "missing.txt")])[0] == 3
    assert run(["bogus"])[0] == 3
    assert run(["--help"]) == (0, "", "")


def test_spec_examples():
    out = run(["check"], "gens: x y\nrel: x\nrel: y\n")[1]
    for line in ("balanced: true", "ac_type1: true", "ac_type2: true"):
        assert line in out.splitlines()
    assert "snf: 1 1" in run(["invariants", "--input", str(INPUTS / "ak2.txt")])[1].splitlines()
    pw = (INPUTS / "constant_pinwheel.txt").read_text()
    assert run(["twist", "-j", "1"], pw)[1] == pw


def test_hom_count_line():
    out = run(["invariants"], "gens: x\nrel: x^2\n")[1]
    assert "hom_count[S3]: 4" in out.splitlines()


def test_stdin_and_config(tmp_path):
    cfg = tmp_path / "budget.ini"
    cfg.write_text("[search]\nmax_depth = 1\nbfs_depth = 1\nmax_nodes = 5\n")
    text = (INPUTS / "scrambled.txt").read_text()
    code, out, _ = run(["trivialize", "--config", str(cfg)], text)
    assert code == 2 and "status: exhausted" in out
    cfg.write_text("[search]\nnonsense = 1\n")
    assert run(["trivialize", "--config", str(cfg)], text)[0] == 3


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "handlecalc.cli", "check", "--input", str(INPUTS / "trivial2.txt")],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout == (GOLDEN / "check_trivial.out").read_text().rsplit("exit:", 1)[0]
    assert r.stderr == ""


def regenerate():
    for name, (argv, infile) in sorted(CASES.items()):
        (GOLDEN / f"{name}.out").write_text(transcript(argv, infile))
        print("wrote", name)


if __name__ == "__main__":
    if "--regen" in sys.argv:
        regenerate()
