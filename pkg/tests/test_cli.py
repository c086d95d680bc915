"""CLI contract: subcommands, output formats, exit codes, env override."""

import json

import pytest
from click.testing import CliRunner

from loopwalk.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args, env=None):
    return runner.invoke(main, list(args), env=env, catch_exceptions=False)


def test_count(runner):
    result = invoke(runner, "count", "--n", "5", "--l", "2")
    assert result.exit_code == 0
    assert result.output.strip() == "6"


def test_count_listing(runner):
    result = invoke(runner, "count", "--n", "5", "--l", "3", "--list")
    assert result.output.splitlines() == ["1", "{5,3,1}"]


def test_denominator_regression(runner):
    result = invoke(runner, "denominator", "--n", "3")
    assert result.exit_code == 0
    assert result.output.strip() == "-L1 -L2 -L3 +L3*L1"


def test_poly(runner):
    result = invoke(runner, "poly", "--kind", "bernoulli", "--n", "2", "--x", "0")
    assert result.output.strip() == "1/6"
    result = invoke(runner, "poly", "--kind", "euler-number", "--n", "6")
    assert result.output.strip() == "-61"
    result = invoke(runner, "poly", "--kind", "bernoulli-number", "--n", "1", "--at", "0")
    assert result.output.strip() == "-1/2"


def test_umbral_moment_and_verify(runner):
    result = invoke(runner, "umbral", "--combo", "x + B + U", "--x", "2/3", "--n", "4")
    assert result.output.strip() == "16/81"
    result = invoke(runner, "umbral", "--lhs", "2*B", "--rhs", "B + E", "--order", "20")
    assert result.exit_code == 0
    assert result.output.startswith("PASS")
    result = invoke(runner, "umbral", "--lhs", "B", "--rhs", "E", "--order", "10")
    assert result.exit_code == 1
    assert result.output.startswith("FAIL")


def test_verify_loop_exit_codes(runner):
    result = invoke(runner, "verify-loop", "--model", "bm", "--loops", "3", "--order", "30")
    assert result.exit_code == 0
    data_result = invoke(
        runner, "verify-loop", "--model", "bm", "--loops", "2", "--order", "10",
        "--output", "json",
    )
    data = json.loads(data_result.output)
    assert data["pass"] is True and data["identity"] == "loop:bm"


def test_verify_loop_with_sites_and_chain(runner):
    result = invoke(
        runner, "verify-loop", "--model", "bm",
        "--sites", '["0", "1/2", "3/2", "2"]', "--order", "12",
    )
    assert result.exit_code == 0
    result = invoke(
        runner, "verify-loop", "--model", "bd", "--chain", '["1/2", "2/5"]', "--order", "16"
    )
    assert result.exit_code == 0


def test_verify_identity(runner):
    result = invoke(runner, "verify-identity", "--model", "bm", "--m", "2", "--order", "12")
    assert result.exit_code == 0
    result = invoke(runner, "verify-identity", "--model", "egf", "--x", "-2", "--order", "12")
    assert result.exit_code == 0


def test_order_env_override(runner):
    result = invoke(
        runner, "verify-identity", "--model", "bm", "--m", "1", "--output", "json",
        env={"LOOPWALK_ORDER": "14"},
    )
    assert json.loads(result.output)["order"] == 14


def test_tail_csv(runner):
    result = invoke(
        runner, "tail", "--model", "bm", "--m", "2", "--order", "4", "--k", "80",
        "--output", "csv",
    )
    lines = result.output.splitlines()
    assert lines[0] == "coefficient,error"
    assert len(lines) == 6


def test_partial_csv_table(runner):
    result = invoke(
        runner, "partial", "--model", "bessel", "--m", "3", "--n", "0", "--k", "4"
    )
    lines = result.output.splitlines()
    assert lines[0] == "k,partial_sum,target,abs_error"
    assert len(lines) == 6
    assert lines[1].split(",")[2] == "2/5"


def test_simulate(runner):
    result = invoke(
        runner, "simulate", "--model", "bd", "--chain", '["1/2"]', "--z", "0.5",
        "--paths", "3000", "--seed", "3", "--output", "json",
    )
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["pass"] is True


def test_usage_errors_exit_2(runner):
    result = runner.invoke(main, ["count", "--n", "5"])
    assert result.exit_code == 2
    result = runner.invoke(main, ["count", "--n", "5", "--l", "2", "--bogus"])
    assert result.exit_code == 2
    result = runner.invoke(main, ["verify-loop", "--model", "bm", "--sites", "not json"])
    assert result.exit_code == 2
    result = runner.invoke(main, ["verify-loop", "--model", "bm", "--sites", '["1","2"]'])
    assert result.exit_code == 2  # degenerate sites -> domain usage error
    result = runner.invoke(main, ["poly", "--kind", "euler", "--n", "1", "--x", "1/0"])
    assert result.exit_code == 2


def test_json_round_trip(runner):
    from loopwalk.schemas import SimulateResponse, VerifyResponse

    result = invoke(
        runner, "verify-identity", "--model", "bessel", "--m", "1", "--order", "10",
        "--output", "json",
    )
    data = json.loads(result.output)
    assert set(data) == {"identity", "m", "order", "pass", "first_mismatch", "details"}
    parsed = VerifyResponse.model_validate(data)
    assert parsed.passed is True and parsed.m == 1

    result = invoke(
        runner, "simulate", "--model", "bd", "--chain", '["1/2"]', "--paths", "500",
        "--seed", "1", "--output", "json",
    )
    sim = SimulateResponse.model_validate(json.loads(result.output))
    assert sim.paths == 500
