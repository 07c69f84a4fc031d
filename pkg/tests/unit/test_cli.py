import csv
import io
import json
from fractions import Fraction

import pytest

from duality_lab import duality_executor, suites
from duality_lab.common.errors import ConfigError
from duality_lab.common.scalars import ArithmeticMode
from duality_lab.duality_executor import EXIT_FAILED, EXIT_PASSED, EXIT_USAGE, run
from duality_lab.representations.heisenberg import RhoC
from duality_lab.report_writer import render_reports
from duality_lab.run_config import Command, OutputFormat, RunConfig, load_config_file
from duality_lab.suites import guarded, rejudge, run_suites
from duality_lab.verification_report import REPORT_FIELDS, CheckKind, ReportStatus, VerificationReport


def _float_report(residual: float, seed=None) -> VerificationReport:
    return VerificationReport.evaluate("float-check", ArithmeticMode.Float, residual, residual, 1e-12, seed=seed)


def test_verify_duality_single_case(capsys):
    assert run(["verify-duality", "--case", "irw-charlier", "--c", "3/4", "--trunc", "12"]) == EXIT_PASSED
    records = json.loads(capsys.readouterr().out)
    assert len(records) == 1
    assert tuple(records[0].keys()) == REPORT_FIELDS
    assert records[0]["case"].startswith("duality:irw-charlier")
    assert records[0]["status"] == "pass"
    assert records[0]["max_abs_residual"] == 0.0


def test_controls_flag_adds_negative_control(capsys):
    assert run(["verify-duality", "--case", "irw-charlier", "--trunc", "6", "--controls"]) == EXIT_PASSED
    records = json.loads(capsys.readouterr().out)
    assert len(records) == 2
    assert all(record["status"] == "pass" for record in records)


def test_csv_report_to_file(tmp_path):
    output = tmp_path / "reports.csv"
    assert run(["verify-duality", "--case", "sip-meixner", "--trunc", "6", "--format", "csv",
                "--output", str(output)]) == EXIT_PASSED
    rows = list(csv.DictReader(io.StringIO(output.read_text())))
    assert len(rows) == 1
    assert tuple(rows[0].keys()) == REPORT_FIELDS
    assert rows[0]["status"] == "pass"
    assert rows[0]["seed"] == ""


def test_config_file_with_flag_override(tmp_path, capsys):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"command": "verify-duality", "cases": ["irw-charlier"], "c": "3/4",
                                "trunc": 12, "format": "json"}))
    assert run(["-cp", str(path), "--trunc", "5", "--format", "csv"]) == EXIT_PASSED
    output = capsys.readouterr().out
    assert output.splitlines()[0] == ",".join(REPORT_FIELDS)
    assert len(output.splitlines()) == 2


def test_yaml_config_file(tmp_path):
    path = tmp_path / "run.yml"
    path.write_text("command: simulate\ncase:\n  - irw-charlier\ntrials: 500\nseed: 3\n")
    config = RunConfig.create_run_config(load_config_file(str(path)))
    assert config.command == Command.Simulate
    assert config.cases == ["irw-charlier"]
    assert config.trials == 500


@pytest.mark.parametrize("argv", [
    ["verify-duality", "--case", "irw-charlier", "--c", "-1"],
    ["verify-duality", "--case", "no-such-case"],
    ["simulate", "--case", "sip-hyp-mp"],
    ["verify-algebra", "--phi", "4.0"],
    ["verify-duality", "--j", "0,2"],
    ["simulate", "--trials", "1"],
    ["--trunc", "4"],
    ["verify-duality", "-cp", "/nonexistent/run.json"],
])
def test_invalid_config_is_a_usage_error(argv):
    assert run(argv) == EXIT_USAGE


def test_unknown_config_key_is_rejected(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"command": "verify-duality", "max-deg-typo": 4}))
    assert run(["-cp", str(path)]) == EXIT_USAGE


def test_non_object_config_file(tmp_path):
    path = tmp_path / "run.yml"
    path.write_text("- verify-duality\n")
    with pytest.raises(ConfigError):
        load_config_file(str(path))


def test_list_cases(capsys):
    assert run(["--list-cases"]) == EXIT_PASSED
    first = capsys.readouterr().out
    assert run(["--list-cases"]) == EXIT_PASSED
    assert capsys.readouterr().out == first
    lines = first.splitlines()
    kinds = [line.split("\t")[0] for line in lines]
    assert kinds.count("duality") == 8
    assert kinds.count("intertwining") == 7
    assert kinds.count("orthogonality") == 6
    assert any(line.split("\t")[1] == "bep-bessel" for line in lines)
    assert any(line.split("\t")[1] == "sip-hyp-mp" for line in lines)


def test_failing_record_sets_exit_status(monkeypatch, capsys):
    failing = VerificationReport.evaluate("broken", ArithmeticMode.Exact, 1.0, 1.0, 0.0)
    monkeypatch.setattr(duality_executor, "run_suites", lambda config: [_float_report(0.0), failing])
    assert run(["verify-algebra"]) == EXIT_FAILED
    records = json.loads(capsys.readouterr().out)
    assert [record["status"] for record in records] == ["pass", "fail"]


def test_verify_algebra_suite(capsys):
    assert run(["verify-algebra"]) == EXIT_PASSED
    records = json.loads(capsys.readouterr().out)
    cases = [record["case"] for record in records]
    assert "jacobi:heisenberg" in cases
    assert "jacobi:sl2" in cases
    assert "y-correction" in cases
    exact = [record for record in records if record["mode"] == "exact"]
    assert exact
    assert all(record["max_abs_residual"] == 0.0 for record in exact
               if not record["case"].endswith("printed-order") and "su11->su11" not in record["case"])


def test_guarded_turns_exceptions_into_failing_records():
    reports = guarded("division", lambda: 1 / 0)
    assert len(reports) == 1
    assert reports[0].status == ReportStatus.Fail
    assert reports[0].case == "division"
    assert "ZeroDivisionError" in reports[0].notes[0]


def test_guarded_keeps_timing():
    reports = guarded("float-check", lambda: _float_report(0.0))
    assert reports[0].passed()
    assert reports[0].wall_time_ms >= 0.0


def test_rejudge_applies_to_deterministic_float_records():
    loose = rejudge(_float_report(1e-10), 1e-6)
    assert loose.passed()
    assert loose.tolerance == 1e-6
    assert not rejudge(_float_report(1e-10, seed=5), 1e-6).passed()
    exact = VerificationReport.evaluate("exact", ArithmeticMode.Exact, 1e-10, 1e-10, 0.0)
    assert not rejudge(exact, 1e-6).passed()
    control = VerificationReport.evaluate("control", ArithmeticMode.Float, 1e-10, 1e-10, 1e-12,
                                          kind=CheckKind.NegativeControl)
    assert control.passed()
    assert rejudge(control, 1e-6).passed()


def test_run_config_parameters():
    config = RunConfig.create_run_config({"command": "verify-duality", "k": "1/2, 2", "j": "3,2", "trunc": 7,
                                          "maxdeg": 6})
    assert config.k == [Fraction(1, 2), Fraction(2)]
    assert config.j == [3, 2]
    assert config.case_overrides() == {"k": [Fraction(1, 2), Fraction(2)], "j": [3, 2], "maxdeg": 6, "grid": 7}
    assert config.with_controls()
    assert config.output_format == OutputFormat.Json
    selected = RunConfig.create_run_config({"command": "verify-duality", "case": "irw-charlier", "grid": 4,
                                            "trunc": 9})
    assert selected.cases == ["irw-charlier"]
    assert not selected.with_controls()
    assert selected.case_overrides() == {"grid": 4}


def test_simulate_records_carry_seed():
    config = RunConfig.create_run_config({"command": "simulate", "case": ["sep-krawtchouk"], "trials": 2000,
                                          "seed": 7, "richardson": False})
    reports = run_suites(config)
    assert len(reports) == 1
    assert reports[0].case.startswith("montecarlo:sep-krawtchouk")
    assert reports[0].seed == 7
    assert reports[0].record()["seed"] == 7


def test_render_reports_json_and_csv():
    reports = [_float_report(0.0), _float_report(1.0, seed=4)]
    records = json.loads(render_reports(reports, OutputFormat.Json))
    assert [record["status"] for record in records] == ["pass", "fail"]
    rows = list(csv.DictReader(io.StringIO(render_reports(reports, OutputFormat.Csv))))
    assert [row["seed"] for row in rows] == ["", "4"]


def _reject_constant(name):
    raise ValueError(f"non standard JSON constant {name}")


def test_failed_record_renders_strict_json():
    reports = guarded("division", lambda: 1 / 0)
    records = json.loads(render_reports(reports, OutputFormat.Json), parse_constant=_reject_constant)
    assert records[0]["status"] == "fail"
    assert records[0]["max_abs_residual"] is None
    assert records[0]["max_rel_residual"] is None
    rows = list(csv.DictReader(io.StringIO(render_reports(reports, OutputFormat.Csv))))
    assert rows[0]["max_abs_residual"] == ""


def _run_records(argv, capsys):
    status = run(argv)
    records = json.loads(capsys.readouterr().out, parse_constant=_reject_constant)
    return status, records


def test_verify_algebra_all_passes_end_to_end(capsys):
    status, records = _run_records(["verify-algebra", "--all", "--trunc", "8", "--maxdeg", "6"], capsys)
    assert [record["case"] for record in records if record["status"] != "pass"] == []
    assert status == EXIT_PASSED
    cases = [record["case"] for record in records]
    assert any(case.startswith("reversibility:bep") and case.endswith("printed)") for case in cases)
    assert any(case.startswith("star-adjointness:rho-k") for case in cases)
    assert any(case.startswith("conservation:algebraic:hyp") for case in cases)


def test_verify_duality_passes_end_to_end(capsys):
    status, records = _run_records(["verify-duality", "--trunc", "5"], capsys)
    assert [record["case"] for record in records if record["status"] != "pass"] == []
    assert status == EXIT_PASSED
    cases = [record["case"] for record in records]
    assert sum(case.startswith("intertwining:") for case in cases) >= 7
    assert any(case.startswith("eigen:laguerre") for case in cases)
    assert all(any(case.startswith(f"duality:{name}") for case in cases)
               for name in ("irw-charlier", "sip-meixner", "sep-krawtchouk", "sip-bep-laguerre", "bep-bessel"))


def test_verify_orthogonality_passes_end_to_end(capsys):
    status, records = _run_records(["verify-orthogonality"], capsys)
    assert [record["case"] for record in records if record["status"] != "pass"] == []
    assert status == EXIT_PASSED
    cases = [record["case"] for record in records]
    assert any(case.startswith("cross-validation:") and "n<=20" in case and "pollaczek" in case.lower()
               for case in cases)
    assert "hermite-relations" in cases


def test_broken_representation_does_not_hide_the_others(monkeypatch):
    def broken():
        raise ValueError("no carrier")

    monkeypatch.setattr(suites, "representation_set",
                        lambda config: [("broken", broken), ("rho-c", lambda: RhoC(Fraction(2), 6))])
    config = RunConfig.create_run_config({"command": "verify-algebra", "trunc": 6})
    reports = suites.representation_suite(config)
    failing = [report.case for report in reports if not report.passed()]
    assert failing == ["representations:broken"]
    assert any(report.case.startswith("bracket:rho-c") for report in reports)
