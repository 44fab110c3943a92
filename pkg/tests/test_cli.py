import json
import subprocess
import sys

import pytest

from ltlfix.cli import main
from ltlfix.trace import evaluate, globally_satisfies, parse_trace


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sat_unsat(capsys):
    code, out, _ = run(capsys, "sat", "G(p <-> X G !p)")
    assert (code, out) == (1, "UNSAT\n")


def test_sat_with_witness(capsys):
    code, out, _ = run(capsys, "sat", "true")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "SAT"
    parse_trace(lines[1])


def test_sat_parse_error(capsys):
    code, out, err = run(capsys, "sat", "G(p <->")
    assert code == 2
    assert "byte 7" in err


def test_sat_from_file(capsys, tmp_path):
    path = tmp_path / "f.ltl"
    path.write_text("G(p <-> !(X p))\n", encoding="utf-8")
    code, out, _ = run(capsys, "sat", "--file", str(path))
    assert code == 0
    assert globally_satisfies(parse_trace(out.splitlines()[1]), "p <-> !(X p)")


@pytest.mark.parametrize(
    "formula, code, head",
    [
        ("X G p <-> G X p", 0, "VALID"),
        ("p", 1, "NOT VALID"),
        ("!G(p <-> X F G !p)", 0, "VALID"),
        ("¬□(p ↔ ○□¬p)", 0, "VALID"),
    ],
)
def test_valid(capsys, formula, code, head):
    c, out, _ = run(capsys, "valid", formula)
    assert c == code
    assert out.splitlines()[0] == head
    if code == 1:
        assert not evaluate(parse_trace(out.splitlines()[1]), 0, formula)


@pytest.mark.parametrize(
    "trace, formula, pos, code, word",
    [
        ("|{p}{}", "p <-> !(X p)", "0", 0, "tt"),
        ("|{}", "F p", "0", 1, "ff"),
        ("{p}|{}", "p", "1", 1, "ff"),
        ("{p}|{}", "p", "0", 0, "tt"),
    ],
)
def test_eval(capsys, trace, formula, pos, code, word):
    c, out, _ = run(capsys, "eval", trace, formula, pos)
    assert (c, out) == (code, word + "\n")


def test_eval_declared_vocabulary_is_strict(capsys):
    code, _, err = run(capsys, "eval", "V=q;|{}", "p")
    assert code == 2 and "not in trace vocabulary" in err


def test_eval_bad_trace(capsys):
    assert run(capsys, "eval", "|", "p")[0] == 2


def test_fixpoint(capsys):
    code, out, _ = run(capsys, "fixpoint", "X G !_")
    assert (code, out) == (1, "NO FIXED POINT\n")
    code, out, _ = run(capsys, "fixpoint", "G _")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "FIXED POINT"
    assert globally_satisfies(parse_trace(lines[1]), "p <-> G p")


def test_fixpoint_without_hole_is_input_error(capsys):
    assert run(capsys, "fixpoint", "X p")[0] == 2


def test_implies(capsys):
    assert run(capsys, "implies", "p -> X p", "p", "G p")[:2] == (0, "CONSEQUENCE\n")
    code, out, _ = run(capsys, "implies", "p -> X p", "G p")
    assert code == 1 and out.startswith("NOT A CONSEQUENCE")


def test_suite(capsys):
    code, out, _ = run(capsys, "suite")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 8
    assert all(line.startswith("ok") for line in lines)


def test_laws(capsys):
    code, out, _ = run(capsys, "laws")
    assert code == 0
    assert len(out.splitlines()) == 13


@pytest.mark.parametrize("cmd", [["suite"], ["laws"], ["sat", "F p"], ["valid", "G p"]])
def test_json_records(capsys, cmd):
    plain = run(capsys, *cmd)[0]
    code, out, _ = run(capsys, "--json", *cmd)
    assert code == plain
    for line in out.splitlines():
        rec = json.loads(line)
        assert {"command", "input", "verdict"} <= rec.keys()
        if "witness" in rec:
            k = parse_trace(rec["witness"])
            if rec["command"] == "sat":
                assert evaluate(k, 0, rec["input"])
            if rec["command"] == "valid":
                assert not evaluate(k, 0, rec["input"])


def test_json_flag_after_subcommand(capsys):
    _, out, _ = run(capsys, "sat", "--json", "p")
    assert json.loads(out)["verdict"] == "SAT"


def test_closure_limit_flag(capsys):
    code, _, err = run(capsys, "sat", "--closure-limit", "2", "G F p")
    assert code == 2 and "closure" in err


def test_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ltlfix", "sat", "G(p <-> X F !p)"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
    assert proc.stdout == "UNSAT\n"
