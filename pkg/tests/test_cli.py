"""Tests for the deficit-lab command line and command executor."""

import json

import pytest

from deficit_lab import __version__
from deficit_lab.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main
from deficit_lab.config import Settings
from deficit_lab.engine import CommandExecutor, get_executor
from deficit_lab.scenarios.reproductions import ScenarioReport, ScenarioRunner
from deficit_lab.utils.conversion import state_to_document

BELL_DOC = {"dims": [2, 2], "pure": [[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]]}
COMPUTATIONAL_DOC = {"kind": "basis", "vectors": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}
TRINE_DOC = {
    "kind": "povm",
    "matrices": [
        [[[0.6666666666666666, 0], [0, 0]], [[0, 0], [0, 0]]],
        [[[0.16666666666666666, 0], [0.28867513459481287, 0]], [[0.28867513459481287, 0], [0.5, 0]]],
        [[[0.16666666666666666, 0], [-0.28867513459481287, 0]], [[-0.28867513459481287, 0], [0.5, 0]]],
    ],
}
FAST = ["--restarts", "2", "--grid", "16"]


@pytest.fixture
def files(tmp_path, sw99):
    paths = {}
    for name, doc in (
        ("bell", BELL_DOC),
        ("sw99", state_to_document(sw99)),
        ("computational", COMPUTATIONAL_DOC),
        ("trine", TRINE_DOC),
    ):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(doc))
        paths[name] = str(path)
    return paths


def run_json(capsys, argv):
    code = main(argv + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


class TestMeasures:
    def test_bell_table(self, capsys, files):
        assert main(["measures", "--state", files["bell"]]) == EXIT_OK
        out = capsys.readouterr().out
        assert "I_M" in out
        assert "degenerate clusters" in out

    def test_json_with_measurement(self, capsys, files):
        code, doc = run_json(capsys, ["measures", "--state", files["sw99"], "--measurement", files["computational"]])
        assert code == EXIT_OK
        assert doc["measurement"]["c_hv"] == pytest.approx(0.467595, abs=1e-5)
        assert doc["measurement"]["delta_cl"] + doc["measurement"]["deficit_q"] == pytest.approx(
            doc["quantities"]["I_M"], abs=1e-9
        )
        assert doc["eigenbasis"]["degenerate_clusters"] == []

    def test_povm_reports_c_hv_only(self, capsys, files):
        code, doc = run_json(capsys, ["measures", "--state", files["bell"], "--measurement", files["trine"]])
        assert code == EXIT_OK
        assert doc["measurement"] == {"c_hv": pytest.approx(1.0, abs=1e-9)}

    def test_bad_state_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"dims": [2, 2], "pure": [[1, 0]]}')
        assert main(["measures", "--state", str(path)]) == EXIT_USAGE
        assert "pure" in capsys.readouterr().err

    def test_missing_state_file(self, capsys, tmp_path):
        code, doc = run_json(capsys, ["measures", "--state", str(tmp_path / "missing.json")])
        assert code == EXIT_USAGE
        assert doc["status"] == "error"
        assert doc["error_type"] == "ParseError"


class TestOptimize:
    def test_bell(self, capsys, files):
        code, doc = run_json(capsys, ["optimize", "--objective", "chv", "--state", files["bell"]] + FAST)
        assert code == EXIT_OK
        assert doc["value"] == pytest.approx(1.0, abs=1e-8)
        assert doc["best_basis"]["kind"] == "basis"
        assert doc["config"]["restarts"] == 2

    def test_deterministic_json(self, capsys, files):
        argv = ["optimize", "--objective", "dcl", "--state", files["sw99"], "--seed", "7"] + FAST
        _, first = run_json(capsys, argv)
        _, second = run_json(capsys, argv)
        assert first == second

    def test_deficit_reports_one_way_information(self, capsys, files):
        code, doc = run_json(capsys, ["optimize", "--objective", "deficit", "--state", files["bell"]] + FAST)
        assert code == EXIT_OK
        assert doc["I_oneway"] == pytest.approx(doc["I_GO"] - doc["value"], abs=1e-12)

    def test_one_way_bookkeeping(self, capsys, files):
        code, doc = run_json(capsys, ["optimize", "--objective", "dcl", "--state", files["sw99"]] + FAST)
        assert code == EXIT_OK
        # I_LOCC minus I_LO is the classical deficit of the reported basis
        assert doc["I_oneway_minus_I_LO"] == pytest.approx(doc["value"], abs=1e-9)
        assert doc["I_oneway"] == pytest.approx(doc["I_LO"] + doc["value"], abs=1e-9)

    def test_bell_bookkeeping(self, capsys, files):
        _, doc = run_json(capsys, ["optimize", "--objective", "chv", "--state", files["bell"]] + FAST)
        assert doc["I_GO"] == pytest.approx(2.0, abs=1e-9)
        assert doc["I_LO"] == pytest.approx(0.0, abs=1e-9)
        assert doc["I_oneway"] == pytest.approx(1.0, abs=1e-8)
        assert doc["I_oneway_minus_I_LO"] == pytest.approx(1.0, abs=1e-8)

    def test_best_basis_is_a_measurement_document(self, capsys, files, tmp_path):
        _, doc = run_json(capsys, ["optimize", "--state", files["sw99"]] + FAST)
        basis = tmp_path / "best.json"
        basis.write_text(json.dumps(doc["best_basis"]))
        code, measured = run_json(capsys, ["measures", "--state", files["sw99"], "--measurement", str(basis)])
        assert code == EXIT_OK
        assert measured["measurement"]["c_hv"] == pytest.approx(doc["value"], abs=1e-9)

    def test_table(self, capsys, files):
        assert main(["optimize", "--state", files["bell"]] + FAST) == EXIT_OK
        out = capsys.readouterr().out
        assert "best basis" in out
        assert "I_oneway - I_LO" in out

    def test_invalid_restarts(self, capsys, files):
        assert main(["optimize", "--state", files["bell"], "--restarts", "0"]) == EXIT_USAGE

    def test_unknown_objective_is_usage_error(self, capsys, files):
        assert main(["optimize", "--objective", "entropy", "--state", files["bell"]]) == EXIT_USAGE


class TestReproduce:
    def test_diagram(self, capsys):
        code, doc = run_json(capsys, ["reproduce", "diagram"] + FAST)
        assert code == EXIT_OK
        assert doc["overall"] is True
        assert len(doc["reports"]) == 3

    def test_failed_scenario_exit_code(self, capsys, monkeypatch):
        def failing(self):
            report = ScenarioReport("diagram/broken")
            report.check_close("impossible", 0.0, 1.0, 1e-9)
            return [report]

        monkeypatch.setattr(ScenarioRunner, "_scenario_diagram", failing)
        assert main(["reproduce", "diagram"]) == EXIT_FAILED
        assert "FAIL" in capsys.readouterr().out

    def test_unknown_target(self, capsys):
        assert main(["reproduce", "nope"]) == EXIT_USAGE


class TestGlobalOptions:
    def test_version_command(self, capsys):
        assert main(["version"]) == EXIT_OK
        assert f"deficit_lab {__version__}" in capsys.readouterr().out

    def test_version_flag(self, capsys):
        assert main(["--version"]) == EXIT_OK
        assert __version__ in capsys.readouterr().out

    def test_no_command(self, capsys):
        assert main([]) == EXIT_USAGE

    def test_bad_config(self, capsys, tmp_path):
        config = tmp_path / "c.yaml"
        config.write_text("optimizer:\n  restarts: many\n")
        assert main(["--config", str(config), "version"]) == EXIT_USAGE
        assert capsys.readouterr().err.startswith("deficit-lab: ")

    def test_config_format(self, capsys, tmp_path):
        config = tmp_path / "c.yaml"
        config.write_text("output:\n  format: json\n")
        assert main(["--config", str(config), "version"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["deficit_lab"] == __version__


class TestCommandExecutor:
    def test_registered_commands(self):
        assert CommandExecutor(Settings()).commands == ["measures", "optimize", "reproduce", "version"]

    def test_unknown_command(self):
        result = CommandExecutor(Settings()).execute("teleport", {})
        assert result["status"] == "error"
        assert "reproduce" in result["available_commands"]

    def test_exception_becomes_error(self):
        result = CommandExecutor(Settings()).execute("measures", {})
        assert result["status"] == "error"
        assert result["error_type"] == "KeyError"
        assert result["operation"] == "measures"

    def test_settings_feed_optimizer(self, files):
        settings = Settings()
        settings.optimizer.restarts = 1
        settings.optimizer.grid_points_per_angle = 8
        result = CommandExecutor(settings).execute("optimize", {"state": files["bell"], "seed": 4})
        assert result["config"] == {
            "restarts": 1,
            "grid_points_per_angle": 8,
            "seed": 4,
            "support_restricted": False,
        }

    def test_singleton(self):
        assert get_executor() is get_executor()
