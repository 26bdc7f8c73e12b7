"""CLI subcommands, exit codes, file output, verify round-trips."""

import json

import pytest
from click.testing import CliRunner

from pgroupcert.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def test_certify_auto_prime(runner):
    result = runner.invoke(main, ["certify", "--n", "1", "--r", "1"])
    assert result.exit_code == 0, result.output
    doc = json.loads(result.output)
    assert doc["kind"] == "construction"
    assert doc["command"]["params"]["p"] == 3
    assert doc["certificate"]["overall_pass"] is True
    assert doc["certificate"]["group"]["lambda"] == {"num": "2", "den": "3"}


def test_certify_explicit_prime_records_deltas(runner):
    result = runner.invoke(main, ["certify", "--n", "2", "--r", "1", "--p", "7"])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["certificate"]["delta"] == [-14, -50]


def test_certify_rejects_even_prime(runner):
    result = runner.invoke(main, ["certify", "--n", "1", "--r", "1", "--p", "2"])
    assert result.exit_code == 2
    assert "odd primes" in result.output


def test_certify_rejects_bad_congruence(runner):
    result = runner.invoke(main, ["certify", "--n", "2", "--r", "1", "--p", "5"])
    assert result.exit_code == 2


def test_certify_verify_round_trip(runner, tmp_path):
    out = tmp_path / "cert.json"
    result = runner.invoke(main, ["certify", "--n", "2", "--r", "1", "--p", "7", "--out", str(out)])
    assert result.exit_code == 0
    result = runner.invoke(main, ["verify", str(out)])
    assert result.exit_code == 0, result.output
    assert "FAIL" not in result.output


def test_verify_rejects_tampered_file(runner, tmp_path):
    out = tmp_path / "cert.json"
    runner.invoke(main, ["certify", "--n", "1", "--r", "1", "--p", "3", "--out", str(out)])
    doc = json.loads(out.read_text())
    doc["certificate"]["delta"][0] += 1
    out.write_text(json.dumps(doc))
    result = runner.invoke(main, ["verify", str(out)])
    assert result.exit_code == 1
    assert "FAIL" in result.output


def test_verify_rejects_truncated_file(runner, tmp_path):
    out = tmp_path / "cert.json"
    runner.invoke(main, ["certify", "--n", "1", "--r", "1", "--p", "3", "--out", str(out)])
    out.write_text(out.read_text()[: len(out.read_text()) // 2])
    result = runner.invoke(main, ["verify", str(out)])
    assert result.exit_code == 2


def test_group_brute_mode(runner):
    result = runner.invoke(main, ["group", "--n", "1", "--p", "3", "--mode", "brute"])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    cert = doc["certificate"]
    assert cert["order"] == 27
    assert cert["max_abelian_order"] == 9
    assert cert["lambda"] == {"num": "2", "den": "3"}
    assert cert["modes_agree"] is True


def test_group_structural_mode(runner):
    result = runner.invoke(main, ["group", "--n", "2", "--p", "3", "--mode", "structural"])
    assert result.exit_code == 0
    cert = json.loads(result.output)["certificate"]
    assert cert["order"] == 243
    assert cert["max_abelian_order"] == 27


def test_group_budget_error(runner):
    result = runner.invoke(main, ["group", "--n", "3", "--p", "101", "--mode", "brute"])
    assert result.exit_code == 2


def test_olshanskii_vacuous_case(runner, tmp_path):
    out = tmp_path / "olsh.json"
    result = runner.invoke(
        main, ["olshanskii", "--n", "1", "--r", "2", "--p", "3", "--seed", "7", "--out", str(out)]
    )
    assert result.exit_code == 0
    doc = json.loads(out.read_text())
    assert doc["certificate"]["certified"] is True
    assert doc["certificate"]["k"] == 4
    verify_result = runner.invoke(main, ["verify", str(out)])
    assert verify_result.exit_code == 0, verify_result.output


def test_olshanskii_requires_r_at_least_2(runner):
    result = runner.invoke(main, ["olshanskii", "--n", "2", "--r", "1", "--p", "5"])
    assert result.exit_code == 2


def test_lambda_table_json_and_witness(runner):
    result = runner.invoke(
        main,
        ["lambda-table", "--max-n", "3", "--max-r", "1", "--epsilon", "2/3"],
    )
    assert result.exit_code == 0
    cert = json.loads(result.output)["certificate"]
    assert cert["rows"][0]["bound"] == {"num": "2", "den": "3"}
    assert cert["epsilon_witness"] == {"n": 2, "r": 1}


def test_lambda_table_witness_none_in_range(runner):
    result = runner.invoke(
        main,
        ["lambda-table", "--max-n", "2", "--max-r", "1", "--epsilon", "51/100"],
    )
    cert = json.loads(result.output)["certificate"]
    assert cert["epsilon_witness"] == "none in range"


def test_lambda_table_csv(runner):
    result = runner.invoke(main, ["lambda-table", "--max-n", "2", "--max-r", "2", "--format", "csv"])
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert lines[0] == "n,r,k,abelian_exponent,order_exponent,bound"
    assert lines[1] == "1,1,,2,3,2/3"
    assert len(lines) == 5


def test_find_prime(runner):
    result = runner.invoke(main, ["find-prime", "--n", "2", "--h", "7"])
    assert result.exit_code == 0
    assert json.loads(result.output)["certificate"]["prime"] == 13


def test_usage_error_on_missing_flags(runner):
    assert runner.invoke(main, ["certify"]).exit_code == 2
    assert runner.invoke(main, ["verify", "/nonexistent/file.json"]).exit_code == 2
