"""Testing the padic-cauchy command line end to end."""
import json

import pytest

from padic_cauchy.cli import parse_problem, run
from padic_cauchy.cli.runner import EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_OK
from padic_cauchy.errors import InputParseError, ValidationError
from tests.util import diagonal_problem, nilpotent_problem, transport_problem, write_problem


@pytest.fixture(autouse=True)
def clean_environment(mocker):
    mocker.patch("padic_cauchy.padic_config.load_dotenv")
    mocker.patch.dict("os.environ", {}, clear=True)


def run_machine(argv, capsys):
    code = run(argv + ["--format", "machine"])
    return code, json.loads(capsys.readouterr().out)


class TestAnalyze:
    def test_diagonal(self, tmp_path, capsys) -> None:
        path = write_problem(tmp_path, diagonal_problem())
        code, report = run_machine(["analyze", "--file", path], capsys)
        assert code == EXIT_OK
        assert report["status"] == "pass"
        assert report["results"]["sigma_exponent"] == "-1"
        assert report["results"]["sigma_method"] == "exact_closed_form"
        assert report["results"]["window_estimate_method"] == "window_limsup"
        assert report["results"]["membership_at_operator_norm"] == "member"
        assert report["inputs"]["prime"] == "3"

    def test_norm_sequence_table(self, tmp_path, capsys) -> None:
        path = write_problem(tmp_path, diagonal_problem())
        _, report = run_machine(["analyze", "--file", path], capsys)
        table = report["tables"]["norm_sequence"]
        assert table["columns"] == ["k", "e_k", "e_k/k"]
        assert len(table["rows"]) == 17
        assert table["rows"][0] == ["0", "0", "-"]
        assert table["rows"][2] == ["2", "-2", "-1"]
        assert all(row[2] == "-1" for row in table["rows"][1:])

    def test_text_report_shows_the_table(self, tmp_path, capsys) -> None:
        path = write_problem(tmp_path, diagonal_problem())
        assert run(["analyze", "--file", path]) == EXIT_OK
        text = capsys.readouterr().out
        assert "norm sequence:" in text
        assert "  3 | -3 | -1" in text


class TestSolveOde:
    def test_nilpotent(self, tmp_path, capsys) -> None:
        path = write_problem(tmp_path, nilpotent_problem())
        code, report = run_machine(["solve-ode", "--file", path], capsys)
        assert code == EXIT_OK
        assert report["results"]["radius"] == "unbounded"
        assert [e["point"] for e in report["evaluations"]] == ["1", "1/2"]
        assert all(check["passed"] for check in report["checks"])

    def test_point_outside_the_disk(self, tmp_path, capsys) -> None:
        problem = dict(diagonal_problem(), mode="ode", points=["1/3"])
        path = write_problem(tmp_path, problem)
        code, report = run_machine(["solve-ode", "--file", path], capsys)
        assert code == EXIT_CHECK_FAILED
        assert report["status"] == "fail"
        assert report["checks"][0]["name"] == "inside disk"

    def test_wellposedness(self, tmp_path, capsys) -> None:
        problem = dict(diagonal_problem(), mode="ode", depth=24, perturbations=[[28]])
        path = write_problem(tmp_path, problem)
        code, report = run_machine(["solve-ode", "--file", path], capsys)
        assert code == EXIT_OK
        assert report["results"]["wellposedness_shells"] == "1, 2, 3, 4"
        table = report["tables"]["wellposedness"]
        assert table["columns"] == [
            "perturbation",
            "shell",
            "difference",
            "bound",
            "margin",
            "holds",
        ]
        assert [row[1] for row in table["rows"]] == ["1", "2", "3", "4"]
        assert table["rows"][0] == ["0", "1", "3^(-3)", "3^(-3) / 1/2", "0", "true"]

    def test_flags_override_the_file(self, tmp_path, capsys) -> None:
        path = write_problem(tmp_path, nilpotent_problem())
        code, report = run_machine(["solve-ode", "--file", path, "--terms", "12"], capsys)
        assert code == EXIT_OK
        assert report["inputs"]["terms"] == "12"
        assert len(report["coefficients"]) == 13

    def test_machine_reports_are_reproducible(self, tmp_path) -> None:
        path = write_problem(tmp_path, nilpotent_problem())
        outputs = []
        for name in ("first.json", "second.json"):
            out = tmp_path / name
            argv = ["solve-ode", "--file", path, "--format", "machine", "--out", str(out)]
            assert run(argv) == EXIT_OK
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]

    def test_text_report(self, tmp_path, capsys) -> None:
        path = write_problem(tmp_path, nilpotent_problem())
        assert run(["solve-ode", "--file", path]) == EXIT_OK
        text = capsys.readouterr().out
        assert text.startswith("command: solve-ode\nstatus: pass\n")
        assert "[pass] derivatives at the origin" in text


class TestSolvePde:
    def test_transport(self, tmp_path, capsys) -> None:
        path = write_problem(tmp_path, transport_problem())
        code, report = run_machine(["solve-pde", "--file", path], capsys)
        assert code == EXIT_OK
        assert report["coefficients"][0] == ["x1"]
        assert report["coefficients"][1] == ["1"]
        assert report["evaluations"][0]["value"] == ["x1 + 5"]

    def test_wrong_mode(self, tmp_path, capsys) -> None:
        path = write_problem(tmp_path, transport_problem())
        assert run(["solve-ode", "--file", path]) == EXIT_INPUT_ERROR
        error = json.loads(capsys.readouterr().err.splitlines()[-1])
        assert error["error_type"] == "validation"


class TestVerify:
    def test_legendre(self, capsys) -> None:
        code, report = run_machine(["verify", "--suite", "legendre", "--max-n", "30"], capsys)
        assert code == EXIT_OK
        assert [suite["name"] for suite in report["suites"]] == ["legendre"]
        assert report["inputs"]["max_n"] == "30"


class TestInputErrors:
    def test_unknown_key(self, tmp_path) -> None:
        path = write_problem(tmp_path, dict(nilpotent_problem(), colour="blue"))
        assert run(["solve-ode", "--file", path]) == EXIT_INPUT_ERROR

    def test_missing_file(self, tmp_path) -> None:
        assert run(["analyze", "--file", str(tmp_path / "absent.json")]) == EXIT_INPUT_ERROR

    def test_bad_prime_flag(self, tmp_path) -> None:
        path = write_problem(tmp_path, nilpotent_problem())
        assert run(["solve-ode", "--file", path, "--p", "4"]) == EXIT_INPUT_ERROR

    def test_no_command(self) -> None:
        assert run([]) == EXIT_INPUT_ERROR

    def test_version(self) -> None:
        assert run(["--version"]) == EXIT_OK


class TestProblemFile:
    def test_parse(self) -> None:
        problem = parse_problem(json.dumps(transport_problem()))
        assert problem.terms[0].beta == [1]
        assert problem.settings()["terms"] == 6

    @pytest.mark.parametrize(
        "text", ["{", "[]", '{"mode": "wave"}', '{"mode": "ode", "matrix": [[1]], "initial": 1}']
    )
    def test_malformed(self, text: str) -> None:
        with pytest.raises(InputParseError):
            parse_problem(text)

    def test_mismatched_shapes(self) -> None:
        with pytest.raises(InputParseError):
            parse_problem(dict(nilpotent_problem(), initial=[1]))

    def test_missing_required_field(self) -> None:
        with pytest.raises(ValidationError):
            parse_problem(dict(mode="pde", variables=1, rho_exponent=0, initial="x1"))
