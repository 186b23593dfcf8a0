#!/usr/bin/env python3
"""
Tests for the command-line front end
"""
import sys
import csv
import io
import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

from functions.exact_core import ExactPhase
from main import cli, main as cli_main


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, list(args), catch_exceptions=False)


def test_dedekind_sum(runner):
    result = invoke(runner, "eval", "dedekind-sum", "--h", "1", "--k", "3")
    assert result.exit_code == 0
    assert result.stdout == "1/18\n"


def test_eta_char_of_inversion(runner):
    result = invoke(runner, "eval", "eta-char", "--a", "0", "--b", "-1", "--c", "1", "--d", "0")
    assert result.exit_code == 0
    assert result.stdout.splitlines() == ["t=0", "value=1.0,0.0"]


def test_eta_char_forms_agree(runner):
    dedekind = invoke(runner, "eval", "eta-char", "--a", "1", "--b", "1", "--c", "2", "--d", "3")
    case_form = invoke(runner, "eval", "eta-char", "--a", "1", "--b", "1", "--c", "2", "--d", "3",
                       "--form", "rademacher")
    assert dedekind.stdout == case_form.stdout
    assert dedekind.stdout.startswith("t=1/6\n")


def test_eta_char_translation(runner):
    result = invoke(runner, "eval", "eta-char", "--a", "1", "--b", "1", "--c", "0", "--d", "1")
    assert result.stdout.splitlines()[0] == "t=1/12"


def test_eta_char_bad_determinant_is_usage_error(runner):
    result = invoke(runner, "eval", "eta-char", "--a", "1", "--b", "2", "--c", "3", "--d", "4")
    assert result.exit_code == 2


def test_eval_eta(runner):
    result = invoke(runner, "eval", "eta", "--tau", "0,1")
    assert result.exit_code == 0
    re, im = (float(part) for part in result.stdout.strip().split(","))
    assert abs(re - 0.768225422326) < 1e-12 and abs(im) < 1e-15


def test_eval_eta_lower_half_plane(runner):
    assert invoke(runner, "eval", "eta", "--tau", "0,-1").exit_code == 2


def test_eval_theta1_methods(runner):
    product = invoke(runner, "eval", "theta1", "--z", "0.5,0", "--tau", "0,1")
    series = invoke(runner, "eval", "theta1", "--z", "0.5,0", "--tau", "0,1", "--method", "series")
    for result in (product, series):
        assert result.exit_code == 0
        assert abs(float(result.stdout.split(",")[0]) - 0.91357913815) < 1e-10


def test_eval_lambda(runner):
    result = invoke(runner, "eval", "lambda", "--alpha", "0.5", "--beta", "0.25", "--w", "20,0")
    assert result.exit_code == 0
    assert abs(complex(*map(float, result.stdout.strip().split(",")))) < 1e-25


def test_bad_complex_is_usage_error(runner):
    assert invoke(runner, "eval", "eta", "--tau", "1+2i").exit_code == 2


def test_unknown_flag_is_usage_error(runner):
    assert invoke(runner, "eval", "eta", "--tau", "0,1", "--digits", "30").exit_code == 2


def test_convergence_failure_exits_1(runner):
    result = invoke(runner, "--max-terms", "10", "eval", "eta", "--tau", "0,0.001")
    assert result.exit_code == 1


def test_table_dedekind(runner):
    result = invoke(runner, "--format", "csv", "table", "dedekind", "--k-max", "3")
    assert result.exit_code == 0
    assert result.stdout_bytes == b"h,k,s\r\n0,1,0\r\n1,2,0\r\n1,3,1/18\r\n2,3,-1/18\r\n"


def test_table_dedekind_json(runner):
    result = invoke(runner, "table", "dedekind", "--k-max", "3")
    rows = json.loads(result.stdout)
    assert rows[-1] == {"h": 2, "k": 3, "s": "-1/18"}


def test_table_characters(runner):
    result = invoke(runner, "--format", "csv", "table", "characters", "--c-max", "6")
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert rows and all(row["equal"] == "true" for row in rows)
    assert rows[0] == {"a": "0", "b": "-1", "c": "1", "d": "-1", "t_dedekind": "23/12",
                       "t_rademacher": "23/12", "equal": "true"}


def test_verify_writes_identical_reports(runner, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for path in (first, second):
        result = invoke(runner, "--output", str(path), "verify", "eq29", "--seed", "3", "--count", "40")
        assert result.exit_code == 0
    assert first.read_bytes() == second.read_bytes()
    body = json.loads(first.read_text())
    assert list(body) == ["reports", "summary"]
    assert body["summary"] == {"eq29": {"failed": 0, "passed": 16, "skipped": 0}}
    report = body["reports"][0]
    for field in ("check_id", "inputs", "residual", "tolerance", "passed", "terms_used"):
        assert field in report


def test_verify_all_is_byte_identical(runner):
    first = invoke(runner, "verify", "all", "--seed", "42", "--count", "200")
    second = invoke(runner, "verify", "all", "--seed", "42", "--count", "200")
    assert first.exit_code == 0 and second.exit_code == 0
    assert first.stdout_bytes == second.stdout_bytes
    summary = json.loads(first.stdout)["summary"]
    assert all(counts["failed"] == 0 for counts in summary.values())


def test_verify_csv(runner):
    result = invoke(runner, "--format", "csv", "verify", "characters", "--count", "1")
    assert result.exit_code == 0
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert rows[0]["check_id"] == "characters"
    assert all(row["status"] == "passed" for row in rows)


def test_verify_count_zero(runner, tmp_path):
    path = tmp_path / "empty.json"
    result = invoke(runner, "--output", str(path), "verify", "all", "--count", "0")
    assert result.exit_code == 0
    assert json.loads(path.read_text()) == {"reports": [], "summary": {}}


def test_verify_failure_exits_1(runner, monkeypatch):
    from services import verifier
    monkeypatch.setattr(verifier, "eta_character_rademacher", lambda A: ExactPhase(Fraction(1, 2)))
    result = invoke(runner, "verify", "characters", "--count", "1")
    assert result.exit_code == 1


def test_verify_unknown_family(runner):
    assert invoke(runner, "verify", "gamma").exit_code == 2


def test_env_overrides(runner, monkeypatch, tmp_path):
    path = tmp_path / "out.json"
    monkeypatch.setenv("IK_COUNT", "0")
    result = invoke(runner, "--output", str(path), "verify", "iseki")
    assert result.exit_code == 0
    assert json.loads(path.read_text())["reports"] == []
    monkeypatch.setenv("IK_TAIL_EPS", "not-a-number")
    assert invoke(runner, "eval", "eta", "--tau", "0,1").exit_code == 2


def test_main_returns_exit_codes(capsys):
    assert cli_main(["eval", "dedekind-sum", "--h", "1", "--k", "3"]) == 0
    assert capsys.readouterr().out == "1/18\n"
    assert cli_main(["eval", "dedekind-sum", "--h", "2", "--k", "4"]) == 2
    assert cli_main(["--help"]) == 0


def main():
    """Run the CLI tests"""
    return pytest.main([__file__, "-q"])


if __name__ == "__main__":
    sys.exit(main())
