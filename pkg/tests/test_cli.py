import json
import subprocess
import sys

import pytest

from newtonpoly.polyring import MultiPoly


def run_cli(*args, **kwargs):
    return subprocess.run([sys.executable, "-m", "newtonpoly.cli", *args],
                          capture_output=True, text=True, **kwargs)


class TestGenerate:
    def test_latex_n1(self):
        result = run_cli("generate", "--n", "1", "--method", "closed", "--format", "latex")
        assert result.returncode == 0
        assert result.stdout == "a x^{2} - c\n2 a x + b\n"

    def test_text_n0(self):
        result = run_cli("generate", "--n", "0", "--method", "recurrence", "--format", "text")
        assert result.returncode == 0
        assert result.stdout == "P = x\nQ = 1\n"

    def test_json_n2_term_counts(self):
        result = run_cli("generate", "--n", "2", "--method", "recurrence", "--format", "json")
        payload = json.loads(result.stdout)
        assert payload["n"] == 2
        assert len(payload["p"]["terms"]) == 5
        assert len(payload["q"]["terms"]) == 6

    @pytest.mark.parametrize("n", range(4))
    def test_methods_emit_identical_bytes(self, n):
        recurrence = run_cli("generate", "--n", str(n), "--method", "recurrence")
        closed = run_cli("generate", "--n", str(n), "--method", "closed")
        assert recurrence.stdout == closed.stdout
        again = run_cli("generate", "--n", str(n), "--method", "recurrence")
        assert again.stdout == recurrence.stdout

    def test_round_trip_of_emitted_polynomials(self):
        result = run_cli("generate", "--n", "3")
        payload = json.loads(result.stdout)
        for key in ("p", "q"):
            poly = MultiPoly.from_dict(payload[key])
            assert poly.to_dict() == payload[key]

    def test_rootform_requires_coefficients(self):
        result = run_cli("generate", "--n", "1", "--method", "rootform")
        assert result.returncode == 2

    def test_rootform_output(self):
        result = run_cli("generate", "--n", "1", "--method", "rootform",
                         "--a", "1", "--b", "0", "--c", "-1")
        payload = json.loads(result.stdout)
        assert payload["coeffs"] == {"a": "1", "b": "0", "c": "-1"}
        assert payload["p"]["terms"] == [{"exp": [2], "coeff": "1"},
                                         {"exp": [0], "coeff": "1"}]

    def test_rootform_degenerate_exits_1(self):
        result = run_cli("generate", "--n", "1", "--method", "rootform",
                         "--a", "1", "--b", "2", "--c", "1")
        assert result.returncode == 1

    def test_cap_exit_code(self):
        result = run_cli("generate", "--n", "12")
        assert result.returncode == 3
        result = run_cli("generate", "--n", "4", "--cap", "3")
        assert result.returncode == 3
        result = run_cli("generate", "--n", "4", "--cap", "4", "--format", "text")
        assert result.returncode == 0

    def test_out_file(self, tmp_path):
        target = tmp_path / "pair.json"
        result = run_cli("generate", "--n", "1", "--out", str(target))
        assert result.returncode == 0
        assert result.stdout == ""
        assert json.loads(target.read_text())["n"] == 1

    def test_audit_records(self, tmp_path):
        target = tmp_path / "audit.jsonl"
        run_cli("generate", "--n", "2", "--method", "closed", "--audit", str(target))
        records = [json.loads(line) for line in target.read_text().splitlines()]
        assert {r["poly"] for r in records} == {"P", "Q"}
        assert all(set(r) == {"poly", "n", "k", "j", "coeff", "monomial"}
                   for r in records)

    def test_audit_requires_closed_method(self, tmp_path):
        result = run_cli("generate", "--n", "2", "--audit", str(tmp_path / "a.jsonl"))
        assert result.returncode == 2


class TestEval:
    def test_worked_sample(self):
        result = run_cli("eval", "--n", "1", "--a", "1", "--b", "-3", "--c", "2", "--x", "3")
        assert result.returncode == 0
        assert result.stdout == "7/3\n"

    def test_identity_iterate(self):
        result = run_cli("eval", "--n", "0", "--a", "1", "--b", "0", "--c", "-1", "--x", "5")
        assert result.stdout == "5\n"

    def test_two_steps(self):
        result = run_cli("eval", "--n", "2", "--a", "1", "--b", "0", "--c", "-1", "--x", "2")
        assert result.stdout == "41/40\n"

    def test_fraction_arguments(self):
        # negative fractions need the --opt=value form (argparse quirk)
        result = run_cli("eval", "--n", "1", "--a", "1/2", "--b", "0", "--c=-1/2", "--x", "3")
        assert result.returncode == 0
        assert result.stdout == "5/3\n"

    def test_pole_exits_1(self):
        result = run_cli("eval", "--n", "1", "--a", "1", "--b", "0", "--c", "-1", "--x", "0")
        assert result.returncode == 1
        assert "domain error" in result.stderr


class TestVerify:
    def test_lemma1_passes(self):
        result = run_cli("verify", "lemma1", "--max-n", "64")
        assert result.returncode == 0
        report = json.loads(result.stdout)
        assert report["passed"] is True
        assert report["identity"]["max_n"] == 64

    def test_equivalence_passes(self):
        result = run_cli("verify", "equivalence", "--max-n", "5")
        assert result.returncode == 0
        assert json.loads(result.stdout)["passed"] is True

    def test_smoothness_strict_n1_fails_and_names_the_coefficient(self):
        result = run_cli("verify", "smoothness", "--n", "1", "--mode", "strict")
        assert result.returncode == 1
        report = json.loads(result.stdout)
        bad = [e for e in report["entries"] if not e["smooth"]]
        assert len(bad) == 1
        assert bad[0]["poly"] == "Q"
        assert bad[0]["coefficient_abs"] == "2"

    def test_smoothness_inclusive_n1_passes(self):
        result = run_cli("verify", "smoothness", "--n", "1", "--mode", "inclusive")
        assert result.returncode == 0

    def test_smoothness_requires_n(self):
        result = run_cli("verify", "smoothness")
        assert result.returncode == 2

    def test_coprime_passes(self):
        result = run_cli("verify", "coprime", "--max-n", "3", "--trials", "5", "--seed", "42")
        assert result.returncode == 0
        report = json.loads(result.stdout)
        assert report["seed"] == 42
        assert all(r["verdict"] == "pass" for r in report["reports"])

    def test_conjugacy_passes(self):
        result = run_cli("verify", "conjugacy", "--max-n", "2")
        assert result.returncode == 0

    def test_qconjecture_passes(self):
        result = run_cli("verify", "qconjecture", "--max-n", "2")
        assert result.returncode == 0
        report = json.loads(result.stdout)
        assert report["conjecture"]["passed"] is True

    def test_qbinom_passes(self):
        result = run_cli("verify", "qbinom", "--max-n", "5", "--product-max-n", "8",
                         "--symmetry-max-n", "8")
        assert result.returncode == 0

    def test_report_file_and_determinism(self, tmp_path):
        first = tmp_path / "r1.json"
        second = tmp_path / "r2.json"
        run_cli("verify", "coprime", "--max-n", "2", "--report", str(first))
        run_cli("verify", "coprime", "--max-n", "2", "--report", str(second))
        assert first.read_bytes() == second.read_bytes()

    def test_unknown_suite_is_usage_error(self):
        result = run_cli("verify", "nonsense")
        assert result.returncode == 2
