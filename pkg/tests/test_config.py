"""Tests for deficit_lab.config."""

import pytest

from deficit_lab.config import (
    Settings,
    get_settings,
    load_settings,
    resolve_config_path,
    set_settings,
    validate_settings,
)
from deficit_lab.errors import ConfigurationError


def write_config(path, text):
    path.write_text(text)
    return str(path)


class TestDefaults:
    def test_without_file(self):
        settings = load_settings()
        assert settings == Settings()
        assert settings.optimizer.restarts == 32
        assert settings.output.format == "table"
        assert settings.scenarios.restarts == 8
        assert settings.scenarios.refine_tolerance == 1e-7

    def test_to_dict(self):
        data = Settings().to_dict()
        assert data["optimizer"]["grid_points_per_angle"] == 64
        assert data["tolerances"]["degeneracy"] == 1e-8
        assert data["threads"] == 0
        assert data["scenarios"]["max_refine_iterations"] == 800


class TestFile:
    def test_explicit_file(self, tmp_path):
        text = "optimizer:\n  restarts: 5\n  refine_tolerance: 1\noutput:\n  format: json\n"
        path = write_config(tmp_path / "c.yaml", text)
        settings = load_settings(path)
        assert settings.optimizer.restarts == 5
        assert settings.optimizer.refine_tolerance == 1.0
        assert settings.output.format == "json"
        assert settings.optimizer.seed == 0

    def test_scenarios_section(self, tmp_path):
        path = write_config(tmp_path / "c.yaml", "scenarios:\n  restarts: 3\n")
        settings = load_settings(path)
        assert settings.scenarios.restarts == 3
        assert settings.optimizer.restarts == 32

    def test_env_file(self, tmp_path, monkeypatch):
        path = write_config(tmp_path / "env.yaml", "optimizer:\n  seed: 9\n")
        monkeypatch.setenv("DEFICIT_LAB_CONFIG", path)
        assert load_settings().optimizer.seed == 9

    def test_home_default(self, tmp_path):
        # HOME points at tmp_path for every test
        (tmp_path / ".deficit-lab").mkdir()
        write_config(tmp_path / ".deficit-lab" / "config.yaml", "threads: 3\n")
        assert load_settings().threads == 3

    def test_explicit_beats_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("DEFICIT_LAB_CONFIG", write_config(tmp_path / "env.yaml", "threads: 1\n"))
        explicit = write_config(tmp_path / "flag.yaml", "threads: 2\n")
        assert resolve_config_path(explicit).name == "flag.yaml"
        assert load_settings(explicit).threads == 2

    def test_missing_explicit_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_settings(str(tmp_path / "nope.yaml"))

    def test_missing_env_file(self, tmp_path, monkeypatch):
        monkeypatch.setenv("DEFICIT_LAB_CONFIG", str(tmp_path / "nope.yaml"))
        with pytest.raises(ConfigurationError):
            load_settings()

    def test_empty_file(self, tmp_path):
        assert load_settings(write_config(tmp_path / "empty.yaml", "")) == Settings()

    def test_logging_file_may_be_null(self, tmp_path):
        path = write_config(tmp_path / "c.yaml", "logging:\n  level: info\n  file: null\n")
        settings = load_settings(path)
        assert settings.logging.level == "info"
        assert settings.logging.file is None

    @pytest.mark.parametrize(
        "text",
        [
            "optimiser:\n  restarts: 5\n",
            "optimizer:\n  iterations: 5\n",
            "optimizer:\n  restarts: many\n",
            "optimizer:\n  restarts: 2.5\n",
            "optimizer:\n  support_restricted: 1\n",
            "optimizer:\n  restarts: 0\n",
            "scenarios:\n  restarts: 0\n",
            "scenarios:\n  refine_tolerance: 0.0\n",
            "optimizer: 5\n",
            "output:\n  format: xml\n",
            "logging:\n  level: loud\n",
            "tolerances:\n  degeneracy: -1.0\n",
            "threads: -1\n",
            "threads:\n",
            "optimizer: [unclosed\n",
        ],
    )
    def test_rejects(self, tmp_path, text):
        with pytest.raises(ConfigurationError):
            load_settings(write_config(tmp_path / "bad.yaml", text))


class TestEnvironment:
    def test_threads_override(self, tmp_path):
        path = write_config(tmp_path / "c.yaml", "threads: 1\n")
        assert load_settings(path, environ={"DEFICIT_LAB_THREADS": "4"}).threads == 4

    def test_threads_must_be_integer(self):
        with pytest.raises(ConfigurationError):
            load_settings(environ={"DEFICIT_LAB_THREADS": "four"})

    def test_reads_process_environment(self, monkeypatch):
        monkeypatch.setenv("DEFICIT_LAB_THREADS", "2")
        assert load_settings().threads == 2


class TestGlobalSettings:
    def test_cached(self):
        assert get_settings() is get_settings()

    def test_set_settings(self):
        custom = Settings()
        custom.optimizer.restarts = 3
        assert set_settings(custom) is custom
        assert get_settings().optimizer.restarts == 3

    def test_set_settings_validates(self):
        custom = Settings()
        custom.output.format = "xml"
        with pytest.raises(ConfigurationError):
            set_settings(custom)

    def test_validate_passes_defaults(self):
        settings = Settings()
        assert validate_settings(settings) is settings
