# app/tests/test_cli.py

import json

import pytest

from app.api import verify
from app.api.deps import EXIT_FAIL, EXIT_PASS, EXIT_USAGE
from app.core.errors import ConfigError
from app.main import main
from app.models.report import IdentityReport, ReportStatus, SuiteName, VerificationReport
from app.services.half_derivative import half_derivative_service
from app.services.report_service import report_service, theorem_report


@pytest.mark.integration
class TestVerifyCommand:
    """Subcomando verify: informe JSON y códigos de salida"""

    def test_theorem_passes(self, capsys, helpers):
        code, report = helpers.run_cli(capsys, "verify", "theorem", "--m", "2", "--a", "0", "--order", "12")
        assert code == EXIT_PASS
        assert report["results"][0]["data"]["equal_through"] == 12
        assert report["status"] == "pass"
        assert report["command"] == "verify theorem"
        assert report["identities"] == ["half_derivative_theorem"]
        assert report["seed"] is None

    def test_report_names_references(self, capsys, helpers):
        """Cada detalle lleva la ecuación que comprueba"""
        code, report = helpers.run_cli(capsys, "verify", "bridge", "--m", "2", "--a", "1", "--order", "12")
        assert code == EXIT_PASS
        assert report["references"] == ["identity_X"]
        assert all(detail["reference"] == "identity_X" for detail in report["details"])

    def test_report_json_round_trip(self):
        """model_dump_json -> model_validate_json sin pérdidas"""
        report = report_service.run_single(
            "verify theorem",
            {"m": 2, "a": 1},
            lambda: theorem_report(half_derivative_service.verify_theorem(2, 1, 6)),
        )
        restored = VerificationReport.model_validate_json(report.model_dump_json())
        assert restored.canonical_json() == report.canonical_json()
        assert restored.details == report.details
        assert restored.status == ReportStatus.PASS

    def test_bailey_records_seed(self, capsys, helpers):
        code, report = helpers.run_cli(
            capsys, "verify", "bailey", "--n-max", "2", "--samples", "2", "--seed", "5", "--order", "8"
        )
        assert code == EXIT_PASS
        assert report["seed"] == 5

    def test_numeric_records_precision(self, capsys, helpers):
        code, report = helpers.run_cli(capsys, "verify", "matrix", "--m", "3", "--precision", "96")
        assert code == EXIT_PASS
        assert report["precision_bits"] == 96

    def test_invalid_pair_is_usage_error(self, capsys, helpers):
        """a >= m se informa como error con código 2"""
        code, report = helpers.run_cli(capsys, "verify", "theorem", "--m", "2", "--a", "2")
        assert code == EXIT_USAGE
        assert report["status"] == "error"
        assert report["error"].startswith("ParameterError")

    def test_failed_check_exit_code(self, capsys, helpers, monkeypatch):
        """Una comprobación fallida da código 1 y aparece en details"""

        def failing(args):
            report = IdentityReport(identity="modular_matrix")
            report.add_check("matrix_involution", False, expected="0", actual="1")
            return report

        monkeypatch.setitem(verify.TARGETS, "matrix", failing)
        code, report = helpers.run_cli(capsys, "verify", "matrix")
        assert code == EXIT_FAIL
        assert report["status"] == "fail"
        assert report["details"][0]["check_name"] == "matrix_involution"

    def test_unknown_target(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "moonshine"])
        assert exc.value.code == EXIT_USAGE

    def test_human_output(self, capsys):
        code = main(["verify", "qbinomial", "--n-max", "4"])
        out = capsys.readouterr().out
        assert code == EXIT_PASS
        assert "verify qbinomial: pass" in out

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        main(["verify", "bc-lemma", "--n-max", "3", "--order", "10", "--out", str(target)])
        capsys.readouterr()
        document = json.loads(target.read_text(encoding="utf-8"))
        assert document["identities"] == ["bc_lemma"]


@pytest.mark.integration
class TestEvaluateCommands:
    """kashaev, t-value y l-value"""

    def test_kashaev_double_sum(self, capsys, helpers):
        code, report = helpers.run_cli(capsys, "kashaev", "--N", "2", "--double-sum", "--precision", "64")
        assert code == EXIT_PASS
        value = report["results"][0]["data"]["value"]
        assert value["re_dec"].startswith("5.0")

    def test_kashaev_cube_root(self, capsys, helpers):
        """X_1^(0)(e^{2 pi i/3}) = 11/2 - i sqrt(3)/2"""
        code, report = helpers.run_cli(capsys, "kashaev", "--N", "3", "--precision", "128")
        assert code == EXIT_PASS
        value = report["results"][0]["data"]["value"]
        assert value["re_dec"].startswith("5.5")
        assert value["im_dec"].startswith("-0.866025403784")

    def test_t_value(self, capsys, helpers):
        code, report = helpers.run_cli(capsys, "t-value", "--m", "1", "--n", "2")
        assert code == EXIT_PASS
        assert report["results"][0]["data"]["value"] == "1681/1"

    def test_l_value(self, capsys, helpers):
        code, report = helpers.run_cli(capsys, "l-value", "--n", "0")
        assert code == EXIT_PASS
        assert report["results"][0]["data"]["value"] == "-2/1"

    def test_l_value_human_summary(self, capsys):
        main(["l-value", "--n", "1"])
        assert "46/1" in capsys.readouterr().out

    def test_kashaev_human_summary_sign(self, capsys):
        """La parte imaginaria negativa se escribe "a - b*i" """
        main(["kashaev", "--N", "3", "--precision", "64"])
        first = capsys.readouterr().out.splitlines()[0]
        assert first.startswith("5.5")
        assert " - 0.866" in first
        assert "+ -" not in first

    def test_l_value_character_summary(self, capsys, helpers):
        """El carácter se serializa como {name, modulus, support}"""
        code, report = helpers.run_cli(capsys, "l-value", "--m", "2", "--a", "0", "--n", "0")
        assert code == EXIT_PASS
        character = report["results"][0]["parameters"]["character"]
        assert character["modulus"] == 20
        assert [3, 1] in character["support"]
        assert report["references"] == ["T_and_L_function"]


@pytest.mark.integration
class TestSuiteConfig:
    """Carga de la configuración de suites"""

    def test_missing_file_uses_defaults(self, tmp_path):
        config = report_service.load_suite_config(str(tmp_path / "absent.json"))
        assert config.seed == 20240611

    def test_override(self, tmp_path):
        path = tmp_path / "suite.json"
        path.write_text(json.dumps({"theorem_order": 4, "seed": 3}), encoding="utf-8")
        config = report_service.load_suite_config(str(path))
        assert config.theorem_order == 4
        assert config.seed == 3

    def test_bad_json(self, tmp_path):
        path = tmp_path / "suite.json"
        path.write_text("{theorem_order: 4", encoding="utf-8")
        with pytest.raises(ConfigError):
            report_service.load_suite_config(str(path))

    def test_not_an_object(self, tmp_path):
        path = tmp_path / "suite.json"
        path.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(ConfigError):
            report_service.load_suite_config(str(path))

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "suite.json"
        path.write_text(json.dumps({"theorem_orders": 4}), encoding="utf-8")
        with pytest.raises(ConfigError):
            report_service.load_suite_config(str(path))

    def test_cli_bad_config_exit_code(self, capsys, helpers, tmp_path):
        path = tmp_path / "suite.json"
        path.write_text(json.dumps({"precision_bits": 4}), encoding="utf-8")
        code, report = helpers.run_cli(capsys, "suite", "formal", "--config", str(path))
        assert code == EXIT_USAGE
        assert report["error"].startswith("ConfigError")


@pytest.mark.integration
@pytest.mark.slow
class TestSuites:
    """Suites reducidas ejecutadas en el pool de hilos"""

    def test_formal_suite(self, small_suite_config):
        report = report_service.run_suite(SuiteName.FORMAL, small_suite_config)
        assert report.status == ReportStatus.PASS, report.details
        assert report.seed == small_suite_config.seed
        assert report.precision_bits is None
        for identity in ("half_derivative_theorem", "andrews_gordon", "bailey_machinery", "h_lemma"):
            assert identity in report.identities
        assert "identity_X" in report.references
        assert "difference_general_a" in report.references

    def test_formal_suite_reproducible(self, small_suite_config):
        first = report_service.run_suite(SuiteName.FORMAL, small_suite_config)
        second = report_service.run_suite(SuiteName.FORMAL, small_suite_config)
        assert first.canonical_json(include_timing=False) == second.canonical_json(include_timing=False)

    def test_numeric_suite(self, small_suite_config):
        report = report_service.run_suite(SuiteName.NUMERIC, small_suite_config)
        assert report.status == ReportStatus.PASS, [d for d in report.details if not d.passed]
        assert report.precision_bits == 128
        assert report.seed is None
        assert "nearly_modular" in report.identities

    def test_cell_exception_marks_error(self, small_suite_config, monkeypatch):
        """Una celda que lanza excepción no detiene la suite"""

        def broken():
            raise ZeroDivisionError("boom")

        def passing():
            report = IdentityReport(identity="stub")
            report.add_check("bc_lemma", True)
            return report

        monkeypatch.setattr(
            report_service,
            "cells_for",
            lambda name, cfg: [(("formal", "b", 0, 0), broken), (("formal", "a", 0, 0), passing)],
        )
        report = report_service.run_suite(SuiteName.FORMAL, small_suite_config)
        assert report.status == ReportStatus.ERROR
        assert "ZeroDivisionError" in report.error
        assert report.identities == ["stub"]
