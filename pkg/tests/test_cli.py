import json
import subprocess
import sys

import pytest

from pqlorentz.cli import EXIT_ARGS, EXIT_EVAL, EXIT_HYPOTHESIS, EXIT_OK, main

EXACT = ["--p", "2", "--q", "3", "--r1", "4", "--rstar", "2"]


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestSubcommands:
    def test_converge_csv(self, capsys):
        code, out, _ = run(["converge", *EXACT, "--f", "monomial:2", "--n", "2,3"], capsys)
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "n,error,rate,normalized,bound,within_bound"
        assert lines[1].startswith("2,0.40000000000000002,")
        assert len(lines) == 3

    def test_voronovskaja_json(self, capsys):
        code, out, _ = run(["voronovskaja", *EXACT, "--f", "monomial:3", "--n", "3", "--format", "json"], capsys)
        assert code == EXIT_OK
        d = json.loads(out)
        assert d["kind"] == "voronovskaja"
        assert d["rows"][0]["error"] == pytest.approx(2 / 361, rel=1e-15)

    def test_simultaneous(self, capsys):
        code, out, _ = run(["simultaneous", *EXACT, "--f", "monomial:3", "--m", "2", "--n", "3"], capsys)
        assert code == EXIT_OK
        assert float(out.splitlines()[1].split(",")[1]) == pytest.approx(1356 / 361, rel=1e-15)

    def test_iterate(self, capsys):
        code, out, _ = run(["iterate", *EXACT, "--f", "monomial:2", "--m", "2", "--n", "3"], capsys)
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "n,m,error,rate,normalized,bound,within_bound"
        assert float(lines[1].split(",")[2]) == pytest.approx(136 / 361, rel=1e-15)

    def test_iterate_linear_schedule(self, capsys):
        code, out, _ = run(["iterate", "--f", "exp", "--n", "5,10,15", "--schedule", "linear"], capsys)
        assert code == EXIT_OK
        assert [line.split(",")[1] for line in out.splitlines()[1:]] == ["5", "10", "15"]

    def test_audit(self, capsys):
        code, out, _ = run(["audit", *EXACT, "--f", "monomial:2", "--n-start", "2", "--n-end", "10"], capsys)
        assert code == EXIT_OK
        header, values = out.splitlines()
        assert header == "lo,hi,ratio,passed,rows_used"
        assert values.startswith("0.5,0.5,1,true,")

    def test_constants(self, capsys):
        code, out, _ = run(["constants", *EXACT, "--r1", "2", "--f", "monomial:2", "--n", "4", "--m", "3"], capsys)
        assert code == EXIT_OK
        table = dict(line.split(",", 1) for line in out.splitlines()[1:])
        assert float(table["M"]) == 48
        assert float(table["Q"]) == 1728
        assert float(table["iterate_bound"]) == pytest.approx(17.723, rel=1e-4)

    def test_constants_json(self, capsys):
        code, out, _ = run(["constants", *EXACT, "--f", "monomial:2", "--n", "4", "--format", "json"], capsys)
        assert code == EXIT_OK
        assert json.loads(out)["exact"]["rate_unit"] == "16/65"

    def test_float_mode(self, capsys):
        code, out, _ = run(["converge", "--float", "--f", "exp", "--n", "5,10"], capsys)
        assert code == EXIT_OK
        assert len(out.splitlines()) == 3


class TestExitCodes:
    @pytest.mark.parametrize(
        "args",
        [
            ["nonsense"],
            ["converge", "--p", "abc"],
            ["converge", "--p", "3", "--q", "2"],
            ["converge", "--f", "nosuchfunction"],
            ["converge", "--n", "0,1"],
            ["converge", "--format", "xml"],
            [],
        ],
    )
    def test_invalid_arguments(self, args, capsys):
        code, _, err = run(args, capsys)
        assert code == EXIT_ARGS
        assert err.startswith("pqlorentz:")

    def test_hypothesis_gate(self, capsys):
        args = ["converge", "--p", "2", "--q", "3", "--r1", "1", "--f", "monomial:2", "--n", "3"]
        assert run(args, capsys)[0] == EXIT_OK
        code, out, err = run(args + ["--strict-hypotheses"], capsys)
        assert code == EXIT_HYPOTHESIS and out == "" and "upper" in err

    def test_strict_passes_when_flags_hold(self, capsys):
        code, _, _ = run(["voronovskaja", "--strict-hypotheses", "--f", "exp", "--n", "5,10"], capsys)
        assert code == EXIT_OK

    def test_evaluation_failure(self, capsys):
        code, _, err = run(["converge", "--f", "geometric:4", "--r", "5", "--r1", "6", "--n", "5"], capsys)
        assert code == EXIT_EVAL
        assert "evaluation failed" in err


def test_out_file_deterministic(tmp_path):
    args = ["converge", "--f", "exp", "--n-start", "5", "--n-end", "12"]
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        assert main(args + ["--out", str(path)]) == EXIT_OK
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pqlorentz", "converge", "--p", "2", "--q", "3", "--f", "monomial:2", "--n", "2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].startswith("2,0.40000000000000002")
