import json
import math

import pytest

from convex_enclose.cli import run


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    assert code == 0, out
    return json.loads(out)


def test_enclose_worked_case(capsys):
    doc = run_json(capsys, ["enclose", "--fn", "t^2", "--a", "0", "--b", "1", "--x", "0.5"])
    assert doc["command"] == "enclose"
    assert doc["input"] == {"fn": "t^2", "a": 0, "b": 1, "x": 0.5}
    result = doc["result"]
    assert result["lower"] == 0.0
    assert result["upper"] == 0.25
    assert result["hh_lower"] == 0.0
    assert result["hh_upper"] == 0.25
    assert result["classical_bound"] == 0.5
    assert doc["certificates"]["ostrowski_difference"] == [0.0, 0.25]
    assert doc["warnings"] == []


def test_enclose_with_oracle_and_diagnostics(capsys):
    doc = run_json(capsys, ["enclose", "--fn", "abs(t - 1/2)", "--a", "0", "--b", "1",
                            "--x", "0.5", "--oracle"])
    result = doc["result"]
    assert result["oracle_gap"] == pytest.approx(0.25, rel=1e-12)
    diag = result["diagnostics"]
    assert diag["stationary_point"] == 0.5
    # quarter-width kink: point value minus mean is -1/4, matching the product form
    assert diag["point_minus_mean"] == pytest.approx(-0.25, rel=1e-12)
    assert diag["slope_product_form"] == pytest.approx(-0.25, rel=1e-12)


def test_enclose_at_endpoint_only_upper(capsys):
    doc = run_json(capsys, ["enclose", "--fn", "t^2", "--a", "0", "--b", "1", "--x", "1"])
    assert doc["result"]["lower"] is None
    assert doc["result"]["upper"] == pytest.approx(0.0, abs=1e-15)
    assert any("endpoint" in w for w in doc["warnings"])


def test_enclose_infinite_upper_serializes_as_string(capsys):
    doc = run_json(capsys, ["enclose", "--fn=-sqrt(t)", "--a", "0", "--b", "1",
                            "--x", "0.5"])
    assert doc["result"]["upper"] == "inf"
    assert doc["result"]["classical_bound"] is None


def test_integrate_certificate(capsys):
    doc = run_json(capsys, ["integrate", "--fn", "exp(t)", "--a", "0", "--b", "1",
                            "--tol", "1e-6"])
    result = doc["result"]
    assert result["width"] <= 1e-6
    assert result["integral_lower"] <= math.e - 1.0 <= result["integral_upper"]
    assert result["cells"] <= 2**16


def test_means_and_kernel_suite(capsys):
    doc = run_json(capsys, ["means", "--fn", "t^2", "--a", "0", "--b", "2",
                            "--c", "0", "--d", "1"])
    assert doc["result"]["lower"] == pytest.approx(1.0 / 3.0, rel=1e-12)
    assert doc["result"]["gap"] == pytest.approx(1.0, rel=1e-12)
    assert doc["result"]["upper"] == pytest.approx(7.0 / 3.0, rel=1e-12)

    doc = run_json(capsys, ["means", "--a", "0.5", "--b", "3", "--c", "1", "--d", "2",
                            "--kernel-suite", "2"])
    entries = doc["result"]["entries"]
    assert [e["kernel"] for e in entries] == ["t^2", "1/t", "-ln(t)"]
    for e in entries:
        assert e["lower"] <= e["gap"] <= e["upper"]
        assert e["gap"] == pytest.approx(e["gap_closed_form"], abs=1e-12)


def test_special_means_values(capsys):
    doc = run_json(capsys, ["special-means", "--a", "1", "--b", repr(math.e), "--p", "1"])
    result = doc["result"]
    assert result["logarithmic"] == pytest.approx(math.e - 1.0, rel=1e-12)
    assert result["identric"] == pytest.approx(math.exp(1.0 / (math.e - 1.0)), rel=1e-12)
    assert result["p_logarithmic"] == pytest.approx(result["arithmetic"], rel=1e-12)


def test_prob_uniform_and_scale_warning(capsys):
    doc = run_json(capsys, ["prob", "--density", "uniform", "--a", "0", "--b", "1",
                            "--x", "0.25"])
    assert doc["result"]["median_lower"] == 0.5
    assert doc["result"]["median_upper"] == 0.5
    assert doc["result"]["cdf_lower"] == pytest.approx(0.25, rel=1e-13)
    assert doc["warnings"] == []

    doc = run_json(capsys, ["prob", "--density", "uniform", "--a", "0", "--b", "2"])
    assert any("scale-corrected" in w for w in doc["warnings"])


def test_prob_step_density(capsys):
    doc = run_json(capsys, ["prob", "--density", "step:0.5,0", "--a", "0", "--b", "1"])
    assert doc["result"]["median_lower"] == 0.0
    assert doc["result"]["median_upper"] == 0.0
    assert doc["result"]["expectation"] == 0.75


def test_divergence_worked_case(capsys):
    doc = run_json(capsys, ["divergence", "--kernel", "chi2", "--p", "0.5,0.5",
                            "--q", "0.25,0.75"])
    result = doc["result"]
    assert result["csiszar"] == 0.25
    assert result["lin_wong"] == 0.0625
    assert result["hh"] == pytest.approx(1.0 / 12.0, rel=1e-13)
    assert result["gap_bounds"] == [0.0, 0.0625]


def test_csv_format(capsys):
    code = run(["--format", "csv", "divergence", "--kernel", "chi2", "--p", "0.5,0.5",
                "--q", "0.25,0.75"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "field,value"
    assert "result.csiszar,0.25" in lines
    assert "result.gap_bounds.1,0.0625" in lines
    # --format is accepted after the subcommand as well
    code = run(["divergence", "--kernel", "chi2", "--p", "0.5,0.5", "--q", "0.25,0.75",
                "--format", "csv"])
    assert code == 0
    assert capsys.readouterr().out == out


def test_output_is_deterministic(capsys):
    argv = ["integrate", "--fn", "t*ln(t)", "--a", "0.5", "--b", "2", "--tol", "1e-8"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    second = capsys.readouterr().out
    assert first == second


def test_numbers_use_seventeen_significant_digits(capsys):
    run(["integrate", "--fn", "exp(t)", "--a", "0", "--b", "1", "--tol", "1e-6",
         "--oracle"])
    out = capsys.readouterr().out
    value = math.e - 1.0
    assert f'"oracle_value": {format(value, ".17g")}' in out
    assert json.loads(out)["result"]["oracle_value"] == value


def test_exit_code_nonconvex(capsys):
    assert run(["enclose", "--fn=-t^2", "--a", "0", "--b", "1", "--x", "0.5"]) == 2
    err = capsys.readouterr().err
    assert "invalid input" in err and "convexity" in err


def test_exit_code_parse_error(capsys):
    assert run(["enclose", "--fn", "t +", "--a", "0", "--b", "1", "--x", "0.5"]) == 2
    assert run(["enclose", "--fn", "q^2", "--a", "0", "--b", "1", "--x", "0.5"]) == 2


def test_exit_code_bad_distribution(capsys):
    assert run(["divergence", "--kernel", "chi2", "--p", "0.7,0.5", "--q", "0.25,0.75"]) == 2
    assert run(["divergence", "--kernel", "chi2", "--p", "0.5,0.5", "--q", "0.25,0.5,0.25"]) == 2


def test_exit_code_budget_exceeded(capsys):
    code = run(["integrate", "--fn", "exp(t)", "--a", "0", "--b", "1",
                "--tol", "1e-13", "--max-cells", "16"])
    assert code == 3
    assert "numerical failure" in capsys.readouterr().err


def test_exit_code_unbounded_slope(capsys):
    assert run(["integrate", "--fn=-sqrt(t)", "--a", "0", "--b", "1"]) == 2


def test_no_command_prints_usage(capsys):
    assert run([]) == 2
    assert "usage" in capsys.readouterr().err


def test_self_test_flag(capsys, monkeypatch):
    monkeypatch.setenv("CONVEX_ENCLOSE_SEED", "1")
    code = run(["--self-test"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["command"] == "self-test"
    assert doc["input"]["seed"] == 1
    assert doc["result"]["ok"] is True
