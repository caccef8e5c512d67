"""End-to-end tests of the command line.

Golden files live in tests/golden; regenerate with
``python tests/test_cli.py`` after an intended output change.
"""
import json
import subprocess
import sys
from pathlib import Path

import pytest

from infdr import cli
from infdr.report import Report

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "reduce": ["reduce", "--n", "2", "--m", "2", "y1_2*y2_1"],
    "reduce_vertex": ["reduce", "--n", "1", "--m", "1", "--coords", "vertex", "(v1_1 - v2_1)**2 + v2_1"],
    "map": ["map", "--n", "2", "--theta", "0,2", "x1*x2 + y1_1"],
    "map_degenerate": ["map", "--n", "1", "--theta", "0,1,1", "x1*y1_1 + y2_1"],
    "phi": ["phi", "--n", "2", "--m", "2", "y1_2*y2_1 + x1*y1_1*y2_2 + y1_1"],
    "psi": ["psi", "--n", "2", "(x1) dx2^dx1"],
    "psi_determinant": ["psi", "--n", "3", "--convention", "determinant", "(1) dx1^dx3"],
    "d": ["d", "--n", "2", "(x2) dx1"],
    "d0": ["d0", "--n", "2", "--m", "1", "x1**2*x2*y1_2"],
    "taylor": ["taylor", "--n", "2", "--point", "1,1", "--order", "1", "x1*x2"],
    "ideal_member": ["ideal", "member", "--n", "2", "--m", "2", "x1*(y1_1*y2_2 + y1_2*y2_1)"],
    "ideal_member_d": ["ideal", "member", "--kind", "D", "--n", "2", "x1**2 + 3*x1*x2"],
    "ideal_not_member": ["ideal", "member", "--n", "2", "--m", "2", "y1_1"],
    "ideal_equality": ["ideal", "equality", "--n", "1", "--m", "2"],
    "check_derham": ["check", "derham", "--n", "2", "--m", "2", "--deg", "2", "--trials", "50", "--seed", "7"],
    "check_cosimplicial": ["check", "cosimplicial", "--n", "1", "--m", "2", "--trials", "10", "--seed", "1"],
    "check_modules": ["check", "modules", "--trials", "4", "--seed", "2"],
}


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", sorted(CASES))
@pytest.mark.parametrize("fmt", ["text", "json"])
def test_golden(name, fmt, capsys):
    code, out, _ = run(CASES[name] + ["--format", fmt], capsys)
    expected = (GOLDEN / f"{name}.{'txt' if fmt == 'text' else 'json'}").read_text()
    assert out == expected
    assert code == (1 if name == "ideal_not_member" else 0)
    if fmt == "json":
        data = json.loads(out)
        assert "command" in data and "params" in data


def test_spec_examples(capsys):
    assert run(["reduce", "--n", "2", "--m", "2", "y1_2*y2_1"], capsys)[1] == "-1 * y1_1*y2_2\n"
    assert run(["d", "--n", "2", "(x2) dx1"], capsys)[1] == "(-1) dx1^dx2\n"
    code, out, _ = run(["check", "derham", "--n", "2", "--m", "2", "--deg", "2", "--trials", "50",
                        "--seed", "7", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["failures"] == [] and data["seed"] == 7 and data["trials"] == 50


def test_json_is_byte_stable(capsys):
    argv = CASES["check_derham"] + ["--format", "json"]
    first = run(argv, capsys)[1]
    assert run(argv, capsys)[1] == first
    assert first == json.dumps(json.loads(first), sort_keys=True, indent=2) + "\n"


def test_global_flags_before_subcommand(capsys):
    assert run(["--n", "2", "--m", "2", "reduce", "y1_2*y2_1"], capsys)[1] == "-1 * y1_1*y2_2\n"


def test_leading_minus_after_separator(capsys):
    assert run(["reduce", "--", "-x1"], capsys)[1] == "-x1\n"


def test_repeated_wedge_warns(capsys):
    code, out, err = run(["psi", "--n", "2", "(1) dx1^dx1"], capsys)
    assert code == 0 and out == "0\n" and "warning" in err


USAGE_ERRORS = [
    [],
    ["frobnicate"],
    ["reduce"],
    ["reduce", "--n", "2", "x1 + + 2"],
    ["reduce", "--n", "1", "x2"],
    ["reduce", "--n", "0", "1"],
    ["reduce", "--m", "-1", "1"],
    ["reduce", "--coords", "polar", "x1"],
    ["reduce", "--format", "xml", "x1"],
    ["map", "x1"],
    ["map", "--theta", "1,0", "x1"],
    ["map", "--theta", "0,1", "--m", "0", "x1"],
    ["psi", "--n", "2", "(1) dx1 + (1) dx1^dx2"],
    ["d", "--n", "1", "dx1"],
    ["taylor", "--point", "a", "--order", "1", "x1"],
    ["taylor", "--n", "2", "--point", "1", "--order", "1", "x1"],
    ["taylor", "--point", "0", "--order", "-1", "x1"],
    ["taylor", "--point", "0", "--order", "1", "y1_1"],
    ["ideal"],
    ["ideal", "member", "--deg-bound", "1", "--n", "1", "--m", "1", "x1*y1_1"],
    ["check"],
    ["check", "derham", "--trials", "many"],
]


@pytest.mark.parametrize("argv", USAGE_ERRORS, ids=lambda a: " ".join(a) or "<empty>")
def test_usage_errors_exit_2(argv, capsys):
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    capsys.readouterr()
    assert code == 2


@pytest.mark.parametrize("command,target", [
    ("derham", "theorem_check"),
    ("cosimplicial", "check_cosimplicial_identities"),
    ("modules", "module_suite"),
])
def test_failed_check_exits_1(command, target, monkeypatch, capsys):
    def failing(*args, **kwargs):
        rep = Report("check " + command, {})
        rep.check("forced", 1, 2)
        return rep

    monkeypatch.setattr(cli, target, failing)
    code, out, _ = run(["check", command, "--trials", "1"], capsys)
    assert code == 1 and "FAIL" in out and "forced" in out


def test_not_member_exits_1(capsys):
    assert run(CASES["ideal_not_member"], capsys)[0] == 1


@pytest.mark.parametrize("entry", [["infdr"], [sys.executable, "-m", "infdr"]])
def test_subprocess_entry_points(entry):
    ok = subprocess.run(entry + ["d", "--n", "2", "(x2) dx1"], capture_output=True, text=True)
    assert ok.returncode == 0 and ok.stdout == "(-1) dx1^dx2\n"
    bad = subprocess.run(entry + ["reduce", "x1 + + 2"], capture_output=True, text=True)
    assert bad.returncode == 2 and "offset 5" in bad.stderr


def regenerate():
    import contextlib
    import io

    GOLDEN.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        for fmt, ext in (("text", "txt"), ("json", "json")):
            buf = io.StringIO()
            with contextlib.redirect_stdout(buf):
                cli.main(argv + ["--format", fmt])
            (GOLDEN / f"{name}.{ext}").write_text(buf.getvalue())


if __name__ == "__main__":
    regenerate()
