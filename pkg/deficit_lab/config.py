"""
Configuration for deficit-lab.

Settings are resolved in this order, later sources winning:
built-in defaults, the YAML config file, environment variables,
and finally command-line flags (applied by the CLI).
"""

import logging
import os
from dataclasses import asdict, dataclass, field, fields, is_dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from .errors import ConfigurationError

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "DEFICIT_LAB_CONFIG"
THREADS_ENV_VAR = "DEFICIT_LAB_THREADS"
DEFAULT_CONFIG_PATH = Path("~/.deficit-lab/config.yaml")


@dataclass
class OptimizerSettings:
    """Defaults for the measurement optimizers."""

    grid_points_per_angle: int = 64
    restarts: int = 32
    seed: int = 0
    refine_tolerance: float = 1e-9
    max_refine_iterations: int = 2000
    support_restricted: bool = False


@dataclass
class ScenarioSettings:
    """Optimizer budget for reproduction targets; grid, seed and threads come from the optimizer section."""

    restarts: int = 8
    refine_tolerance: float = 1e-7
    max_refine_iterations: int = 800


@dataclass
class ToleranceSettings:
    """Numeric tolerances used when reporting on a state."""

    # Eigenvalues of rho_A closer than this count as one degenerate cluster
    degeneracy: float = 1e-8


@dataclass
class OutputSettings:
    format: str = "table"
    significant_digits: int = 6


@dataclass
class LoggingSettings:
    level: str = "warning"
    file: Optional[str] = None


@dataclass
class Settings:
    """Top-level settings tree."""

    optimizer: OptimizerSettings = field(default_factory=OptimizerSettings)
    scenarios: ScenarioSettings = field(default_factory=ScenarioSettings)
    tolerances: ToleranceSettings = field(default_factory=ToleranceSettings)
    output: OutputSettings = field(default_factory=OutputSettings)
    logging: LoggingSettings = field(default_factory=LoggingSettings)
    # 0 means "let the optimizer decide"
    threads: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


_OUTPUT_FORMATS = ("table", "json")
_LOG_LEVELS = ("debug", "info", "warning", "error")


def _coerce(value: Any, expected: type, key: str) -> Any:
    """Check a YAML value against the dataclass field type."""
    if expected is float and isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    if expected is bool:
        if not isinstance(value, bool):
            raise ConfigurationError(f"{key}: expected true/false, got {value!r}")
        return value
    if expected is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ConfigurationError(f"{key}: expected an integer, got {value!r}")
    if expected is float and not isinstance(value, float):
        raise ConfigurationError(f"{key}: expected a number, got {value!r}")
    if expected is str and not isinstance(value, str):
        raise ConfigurationError(f"{key}: expected a string, got {value!r}")
    return value


def _merge(target: Any, data: Dict[str, Any], prefix: str = "") -> None:
    """Merge a parsed YAML mapping into a settings dataclass in place."""
    if not isinstance(data, dict):
        raise ConfigurationError(f"{prefix or 'config'}: expected a mapping, got {type(data).__name__}")

    known = {f.name: f for f in fields(target)}
    for key, value in data.items():
        dotted = f"{prefix}{key}"
        if key not in known:
            raise ConfigurationError(f"Unknown configuration key: {dotted}")

        current = getattr(target, key)
        if is_dataclass(current):
            _merge(current, value, prefix=f"{dotted}.")
            continue

        if value is None:
            if key == "file":
                setattr(target, key, None)
                continue
            raise ConfigurationError(f"{dotted}: value must not be empty")

        expected = type(current) if current is not None else str
        setattr(target, key, _coerce(value, expected, dotted))


def validate_settings(settings: Settings) -> Settings:
    """Range checks that the type checks in _merge cannot express."""
    opt = settings.optimizer
    for name in ("grid_points_per_angle", "restarts", "max_refine_iterations"):
        if getattr(opt, name) < 1:
            raise ConfigurationError(f"optimizer.{name} must be >= 1")
    if opt.refine_tolerance <= 0:
        raise ConfigurationError("optimizer.refine_tolerance must be positive")
    budget = settings.scenarios
    for name in ("restarts", "max_refine_iterations"):
        if getattr(budget, name) < 1:
            raise ConfigurationError(f"scenarios.{name} must be >= 1")
    if budget.refine_tolerance <= 0:
        raise ConfigurationError("scenarios.refine_tolerance must be positive")
    if settings.tolerances.degeneracy <= 0:
        raise ConfigurationError("tolerances.degeneracy must be positive")
    if settings.output.format not in _OUTPUT_FORMATS:
        raise ConfigurationError(f"output.format must be one of {', '.join(_OUTPUT_FORMATS)}")
    if settings.output.significant_digits < 1:
        raise ConfigurationError("output.significant_digits must be >= 1")
    if settings.logging.level.lower() not in _LOG_LEVELS:
        raise ConfigurationError(f"logging.level must be one of {', '.join(_LOG_LEVELS)}")
    if settings.threads < 0:
        raise ConfigurationError("threads must be >= 0")
    return settings


def resolve_config_path(explicit: Optional[str] = None) -> Optional[Path]:
    """Pick the config file: explicit flag, then environment, then the home default."""
    if explicit:
        path = Path(explicit).expanduser()
        if not path.is_file():
            raise ConfigurationError(f"Config file not found: {path}")
        return path

    env_path = os.environ.get(CONFIG_ENV_VAR)
    if env_path:
        path = Path(env_path).expanduser()
        if not path.is_file():
            raise ConfigurationError(f"{CONFIG_ENV_VAR} points to a missing file: {path}")
        return path

    default = DEFAULT_CONFIG_PATH.expanduser()
    return default if default.is_file() else None


def load_settings(config_path: Optional[str] = None, environ: Optional[Dict[str, str]] = None) -> Settings:
    """Build settings from defaults, the YAML file and the environment.

    Args:
        config_path: Explicit config file (the CLI's --config)
        environ: Environment mapping, defaults to os.environ

    Returns:
        Validated Settings
    """
    environ = os.environ if environ is None else environ
    settings = Settings()

    path = resolve_config_path(config_path)
    if path is not None:
        try:
            data = yaml.safe_load(path.read_text()) or {}
        except yaml.YAMLError as e:
            raise ConfigurationError(f"{path}: invalid YAML: {e}") from e
        _merge(settings, data)
        logger.debug("Loaded configuration from %s", path)

    threads = environ.get(THREADS_ENV_VAR)
    if threads:
        try:
            settings.threads = int(threads)
        except ValueError as e:
            raise ConfigurationError(f"{THREADS_ENV_VAR} must be an integer, got {threads!r}") from e

    return validate_settings(settings)


# Process-wide settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get the global settings instance, loading it on first use."""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def set_settings(settings: Settings) -> Settings:
    """Install an explicitly built settings instance (used by the CLI)."""
    global _settings
    _settings = validate_settings(settings)
    return _settings


def reset_settings():
    """Drop the cached settings so the next get_settings() reloads."""
    global _settings
    _settings = None
