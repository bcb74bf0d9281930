import json

import pytest

import cli
import commands.expand
from commands import order_two_report

GENERIC = {"alpha": 0, "factors": [{"a": 1, "b": 0}, {"a": 3, "b": 0}]}
RESONANT = {"alpha": 0, "factors": [{"a": 1, "b": 0}, {"a": 1, "b": 0}]}


@pytest.fixture(autouse=True)
def _isolated_logs(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_commands_are_discovered():
    names = [name.split(".")[-1] for name in cli.discover_commands()]
    assert names == ["classify", "expand", "factor_linear", "growth", "painleve", "verify"]


def test_classify_generic_chain(capsys):
    code, result = run_json(capsys, "classify", json.dumps(GENERIC))
    assert code == cli.EXIT_OK
    assert result["case_path"] == "I.B2"
    assert result["completeness"] == "All"
    assert [f["case_tag"] for f in result["families"]] == ["particular-riccati", "I.B2.row4"]


def test_order_two_report_helper():
    cli.build_parser()
    report = order_two_report(GENERIC)
    assert report.case_path == "I.B2"


def test_classify_is_deterministic(capsys):
    first = run(capsys, "classify", json.dumps(GENERIC))
    second = run(capsys, "classify", json.dumps(GENERIC))
    assert first == second


def test_classify_pretty(capsys):
    code, out = run(capsys, "--pretty", "classify", json.dumps(GENERIC))
    assert code == 0
    assert out.startswith("case I.B2 (All)")


def test_classify_needs_two_factors(capsys):
    code, result = run_json(capsys, "classify", json.dumps({"alpha": 0, "factors": [{"a": 1, "b": 0}]}))
    assert code == cli.EXIT_INPUT
    assert result["error"] == "InputError"


def test_float_input_rejected(capsys):
    chain = {"alpha": 0, "factors": [{"a": 1.5, "b": 0}, {"a": 3, "b": 0}]}
    code, result = run_json(capsys, "classify", json.dumps(chain))
    assert code == cli.EXIT_INPUT
    assert "rational" in result["message"]


def test_painleve_resonant_chain(capsys):
    code, result = run_json(capsys, "painleve", "--jmax", "10", json.dumps(RESONANT))
    assert code == 0
    assert result["genericity"] == {"verdict": "InS", "witness": [1, 1], "jmax": 10}
    assert {b["laurent"]["balance"]["u0"] for b in result["balances"]} == {"-1", "-2"}


def test_painleve_bad_injection(capsys):
    code, _ = run_json(capsys, "painleve", "--inject", "[1, 2]", json.dumps(RESONANT))
    assert code == cli.EXIT_INPUT


def test_painleve_injection_keys_must_be_integers(capsys):
    code, result = run_json(capsys, "painleve", "--inject", json.dumps({"one": 0}), json.dumps(RESONANT))
    assert code == cli.EXIT_INPUT
    assert result["error"] == "InputError"
    assert "integer" in result["message"]


def test_expand_empty_factors(capsys):
    code, result = run_json(capsys, "expand", json.dumps({"alpha": 0, "factors": []}))
    assert code == cli.EXIT_INPUT
    assert result["error"] == "InputError"


def test_expand_round_trips_the_chain(capsys):
    chain = {"alpha": "1/2", "factors": [{"a": 1, "b": {"re": "0", "im": "1"}}]}
    code, result = run_json(capsys, "expand", json.dumps(chain))
    assert code == 0
    assert result["chain"] == {"alpha": "1/2", "factors": [{"a": "1", "b": {"re": "0", "im": "1"}}]}
    assert result["polynomial"]["order"] == 1


def test_factor_linear(capsys):
    code, result = run_json(capsys, "factor-linear", json.dumps({"coefficients": [-4, 2, -3]}))
    assert code == 0
    assert result["chain"]["alpha"] == "2"
    assert result["reexpanded"] == ["-4", "2", "-3"]


def test_factor_linear_zero_root_with_forcing(capsys):
    code, result = run_json(capsys, "factor-linear", json.dumps({"coefficients": [1, 0, 1]}))
    assert code == cli.EXIT_OK
    assert result["chain"]["alpha"] == "0"
    assert result["reexpanded"] == ["0", "0", "1"]


def test_verify_family(capsys):
    payload = {"chain": GENERIC, "family": "I.B2.row4", "assignment": {"z0": "1/5"}}
    code, result = run_json(capsys, "verify", "--samples", "10", json.dumps(payload))
    assert code == 0
    assert result["report"]["verdict"] == "Pass"
    assert len(result["report"]["sample_points"]) == 10


def test_verify_inner_factor(capsys):
    payload = {"chain": GENERIC, "family": "particular-riccati", "assignment": {"c": 1}}
    code, result = run_json(capsys, "verify", "--inner", json.dumps(payload))
    assert code == 0
    assert result["report"]["verdict"] == "Pass"


def test_verify_constraint_violation(capsys):
    chain = {"alpha": 0, "factors": [{"a": 0, "b": 1}, {"a": 1, "b": 2}]}
    payload = {"chain": chain, "family": "III.tanh", "assignment": {"c0": 0, "c1": 1}}
    code, result = run_json(capsys, "verify", json.dumps(payload))
    assert code == cli.EXIT_DOMAIN
    assert result["error"] == "ConstraintViolation"


def test_growth_table(capsys):
    chain = {"alpha": 0, "factors": [{"a": 0, "b": 1}, {"a": 1, "b": 2}]}
    payload = {"chain": chain, "family": "III.tanh", "assignment": {"c0": 1, "c1": 0.3}}
    code, result = run_json(capsys, "growth", "--steps", "6", "--quad-points", "128", "--table", json.dumps(payload))
    assert code == 0
    assert len(result["curve"]["radii"]) == 6
    assert result["table"].splitlines()[0] == "# r m N T"


def test_batch_mode(capsys):
    lines = "\n".join([json.dumps(GENERIC), json.dumps({"alpha": 0, "factors": []}), ""])
    code, out = run(capsys, "--batch", "expand", lines)
    outputs = [json.loads(line) for line in out.splitlines()]
    assert len(outputs) == 2
    assert "polynomial" in outputs[0]
    assert outputs[1]["error"] == "InputError"
    assert code == cli.EXIT_INPUT


def test_file_source(capsys, tmp_path):
    path = tmp_path / "chain.json"
    path.write_text(json.dumps(GENERIC))
    code, result = run_json(capsys, "classify", str(path))
    assert code == 0
    assert result["case_path"] == "I.B2"


def test_missing_file(capsys):
    code, result = run_json(capsys, "classify", "does-not-exist.json")
    assert code == cli.EXIT_INPUT


def test_unknown_option(capsys):
    code, result = run_json(capsys, "classify", "--no-such-flag", json.dumps(GENERIC))
    assert code == cli.EXIT_INPUT


def test_internal_errors_are_not_reported_as_input_errors(capsys, monkeypatch):
    def broken(args, payload):
        raise RuntimeError("broken handler")

    monkeypatch.setattr(commands.expand, "run", broken)
    with pytest.raises(RuntimeError, match="broken handler"):
        cli.main(["expand", json.dumps(GENERIC)])
