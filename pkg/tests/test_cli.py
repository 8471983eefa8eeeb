import json
import subprocess
import sys

import pytest

from meadow.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_rational_pinned(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "--model", "q0", "1 + 1/2")
        assert code == 0
        assert out == "3/2\n"

    def test_division_by_zero(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "--model", "q0", "1/0")
        assert (code, out) == (0, "0\n")

    def test_assignment(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "--model", "mk:6",
                               "x*y + 1", "--assign", "x=2", "--assign", "y=3")
        assert (code, out) == (0, "1\n")

    def test_galois_assignment(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "--model", "gf:2^2",
                               "x*x", "--assign", "x=a")
        assert (code, out) == (0, "a + 1\n")

    def test_unbound_variable_is_domain_error(self, capsys):
        code, _, err = run_cli(capsys, "eval", "--model", "q0", "x + 1")
        assert code == 2
        assert "x" in err

    def test_bad_assignment_syntax(self, capsys):
        code, _, err = run_cli(capsys, "eval", "--model", "q0", "x",
                               "--assign", "x:1")
        assert code == 2
        assert "NAME=VALUE" in err


class TestParse:
    def test_round_trip_output(self, capsys):
        code, out, _ = run_cli(capsys, "parse", "(x + y)*x")
        assert (code, out) == (0, "(x + y)*x\n")

    def test_inversive_signature_flag(self, capsys):
        code, out, _ = run_cli(capsys, "parse", "inv(x)", "--signature",
                               "inversive")
        assert (code, out) == (0, "inv(x)\n")

    def test_parse_error_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "parse", "x +")
        assert code == 2
        assert "error:" in err

    def test_json_includes_tree(self, capsys):
        code, out, _ = run_cli(capsys, "parse", "x", "--format", "json")
        payload = json.loads(out)
        assert payload["tree"] == {"node": "var", "name": "x"}


class TestCheck:
    def test_valid_exhaustive(self, capsys):
        code, out, _ = run_cli(capsys, "check", "--model", "mk:6",
                               "(x/y)*(z/w) = (x*z)/(y*w)",
                               "--strategy", "exhaustive")
        assert code == 0
        assert out.splitlines()[0] == "Valid"
        assert "1296" in out

    def test_refuted_exit_code_and_counterexample(self, capsys):
        code, out, _ = run_cli(capsys, "check", "--model", "gf:2^2",
                               "x*x = x")
        assert code == 1
        lines = out.splitlines()
        assert lines[0] == "Refuted"
        assert "counterexample: x = a" in lines[1]

    def test_sampled_on_rationals(self, capsys):
        code, out, _ = run_cli(capsys, "check", "--model", "q0",
                               "x/y = x*(1/y)", "--samples", "500")
        assert code == 0
        assert out.splitlines()[0] == "SampledOk"
        assert "500 samples, seed 0" in out

    def test_missing_equals_sign(self, capsys):
        code, _, err = run_cli(capsys, "check", "--model", "q0", "x + y")
        assert code == 2
        assert "'='" in err

    def test_exhaustive_on_rationals_is_domain_error(self, capsys):
        code, _, err = run_cli(capsys, "check", "--model", "q0", "x = x",
                               "--strategy", "exhaustive")
        assert code == 2

    def test_json_verdict(self, capsys):
        code, out, _ = run_cli(capsys, "check", "--model", "mk:2",
                               "1/(x*y) = (1/x)*(1/y)", "--format", "json")
        payload = json.loads(out)
        assert code == 0
        assert payload["verdict"] == "valid"
        assert payload["evaluations"] == 4
        assert payload["counterexample"] is None


class TestNormalize:
    def test_basic_default(self, capsys):
        code, out, _ = run_cli(capsys, "normalize", "1/(1 + 1/2)")
        assert code == 0
        assert out.splitlines()[0] == "+1/1 -2/2 +4/6"

    def test_basic_zero(self, capsys):
        code, out, _ = run_cli(capsys, "normalize", "1/0")
        assert out.splitlines() == ["0", "0"]

    def test_canonical(self, capsys):
        code, out, _ = run_cli(capsys, "normalize", "(x + 1)*(x - 1)",
                               "--canonical", "x")
        assert (code, out) == (0, "x*x - 1\n")

    def test_canonical_json_coefficients(self, capsys):
        _, out, _ = run_cli(capsys, "normalize", "(x + 1)*(x - 1)",
                            "--canonical", "x", "--format", "json")
        payload = json.loads(out)
        assert payload["coefficients"] == [-1, 0, 1]

    def test_open_term_is_domain_error(self, capsys):
        code, _, err = run_cli(capsys, "normalize", "x + 1")
        assert code == 2


class TestSimplify:
    def test_q0_closed(self, capsys):
        code, out, _ = run_cli(capsys, "simplify", "--model", "q0",
                               "1 + 1/2")
        assert (code, out) == (0, "3/2\n")

    def test_q0_negative(self, capsys):
        code, out, _ = run_cli(capsys, "simplify", "--model", "q0", "0 - 4/6")
        assert (code, out) == (0, "-2/3\n")

    def test_finite_model(self, capsys):
        code, out, _ = run_cli(capsys, "simplify", "--model", "mk:2", "1/x")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "x/1"
        assert lines[1] == "Valid"

    def test_sum_of_fractions_target(self, capsys):
        code, out, _ = run_cli(capsys, "simplify", "--target",
                               "sum-of-fractions", "1/(1/x)")
        assert code == 0
        assert out.splitlines()[0] == "x*x/x"

    def test_sum_of_fractions_json(self, capsys):
        _, out, _ = run_cli(capsys, "simplify", "--target",
                            "sum-of-fractions", "1/(1/x + 1/y)",
                            "--format", "json")
        payload = json.loads(out)
        assert len(payload["summands"]) == 5


class TestFalsify:
    def test_constant_candidate(self, capsys):
        code, out, _ = run_cli(capsys, "falsify", "1", "1")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "witness: 1/3"
        assert lines[1] == "1 + 1/x at witness: 4"
        assert lines[2] == "f/g at witness: 1"

    def test_zero_witness_candidate(self, capsys):
        code, out, _ = run_cli(capsys, "falsify", "x + 1", "x")
        assert out.splitlines()[0] == "witness: 0"

    def test_non_polynomial_input(self, capsys):
        code, _, err = run_cli(capsys, "falsify", "1/x", "1")
        assert code == 2


class TestChar:
    @pytest.mark.parametrize("model,expect", [
        ("q0", "0"), ("mk:6", "6"), ("gf:3^2", "3"),
    ])
    def test_values(self, capsys, model, expect):
        code, out, _ = run_cli(capsys, "char", "--model", model)
        assert (code, out) == (0, f"{expect}\n")


class TestDemo:
    @pytest.mark.parametrize("name", [
        "omega", "separation", "finite-simple", "sum-of-fractions",
        "falsify-q0",
    ])
    def test_runs_clean(self, capsys, name):
        code, out, _ = run_cli(capsys, "demo", name)
        assert code == 0
        assert out

    def test_separation_content(self, capsys):
        _, out, _ = run_cli(capsys, "demo", "separation")
        assert "q0 value: 3/2" in out
        assert "mk:2 value: 1" in out

    def test_finite_simple_content(self, capsys):
        _, out, _ = run_cli(capsys, "demo", "finite-simple")
        assert "(n, m) = (3, 1)" in out
        assert "1/x = x^3: Valid" in out

    def test_omega_content(self, capsys):
        _, out, _ = run_cli(capsys, "demo", "omega")
        assert "counterexample x = a" in out


class TestJsonStability:
    CASES = [
        ("check", "--model", "mk:6", "x/y = x*(1/y)", "--format", "json"),
        ("check", "--model", "q0", "x/y = x*(1/y)", "--samples", "200",
         "--format", "json"),
        ("normalize", "1/(1 + 1/2)", "--format", "json"),
        ("simplify", "--model", "q0", "1 + 1/2", "--format", "json"),
        ("demo", "sum-of-fractions", "--format", "json"),
    ]

    @pytest.mark.parametrize("argv", CASES, ids=lambda a: a[0])
    def test_byte_identical_reruns(self, capsys, argv):
        _, first, _ = run_cli(capsys, *argv)
        _, second, _ = run_cli(capsys, *argv)
        assert first == second
        json.loads(first)


def test_console_script_wiring():
    proc = subprocess.run(
        [sys.executable, "-m", "meadow", "eval", "--model", "q0", "1 + 1/2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "3/2\n"


def test_usage_error_exit_code():
    proc = subprocess.run(
        [sys.executable, "-m", "meadow", "frobnicate"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2
