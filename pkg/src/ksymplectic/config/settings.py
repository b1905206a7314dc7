"""
Configuration Management

Settings of the toolkit, read from YAML when a file is given:

- ``symbolic``: seeded numeric fallback of the equality test
- ``regularity``: determinant tolerance of the Hessian verdict
- ``numverify``: grid defaults, relaxation stopping rule, residual tolerances
- ``output``: report precision
- ``logging``: level, format, optional log file
"""

import copy
import logging
from pathlib import Path
from typing import Any, Dict, Iterator, NamedTuple, Optional, Tuple, Union

try:
    import yaml

    YAML_AVAILABLE = True
except ImportError:
    YAML_AVAILABLE = False
    yaml = None

from ..exceptions import ConfigError
from .constants import (
    DETERMINANT_TOLERANCE,
    EXACT_TOLERANCE,
    FALLBACK_SAMPLES,
    FALLBACK_SEED,
    FD_TOLERANCE,
    INTERIOR_WIDTH,
    MIN_GRID_NODES,
    NUMERIC_RTOL,
    RELAXATION_MAX_ITERATIONS,
    RELAXATION_TOLERANCE,
    SAMPLE_BOX,
)

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

DEFAULT_CONFIG: Dict[str, Any] = {
    "symbolic": {
        "fallback_seed": FALLBACK_SEED,
        "fallback_samples": FALLBACK_SAMPLES,
        "sample_low": SAMPLE_BOX[0],
        "sample_high": SAMPLE_BOX[1],
        "numeric_rtol": NUMERIC_RTOL,
    },
    "regularity": {
        "determinant_tolerance": DETERMINANT_TOLERANCE,
    },
    "numverify": {
        "default_extent": [0.0, 1.0],
        "default_step": 0.01,
        "interior_width": INTERIOR_WIDTH,
        "min_nodes": MIN_GRID_NODES,
        "relaxation_tolerance": RELAXATION_TOLERANCE,
        "relaxation_max_iterations": RELAXATION_MAX_ITERATIONS,
        "exact_tolerance": EXACT_TOLERANCE,
        "fd_tolerance": FD_TOLERANCE,
    },
    "output": {
        "decimal_precision": 12,
        "json_indent": 2,
    },
    "logging": {
        "level": "WARNING",
        "file_logging": False,
        "log_directory": "logs",
        "log_format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    },
}

# (dotted key, predicate, requirement) checked after every change
_RULES: Tuple[Tuple[str, Any, str], ...] = (
    ("symbolic.fallback_samples", lambda v: isinstance(v, int) and v >= 1, "an integer >= 1"),
    ("symbolic.numeric_rtol", lambda v: 0 < v < 1, "between 0 and 1"),
    ("regularity.determinant_tolerance", lambda v: v > 0, "positive"),
    ("numverify.min_nodes", lambda v: isinstance(v, int) and v >= MIN_GRID_NODES, ">= 5"),
    ("numverify.interior_width", lambda v: isinstance(v, int) and v >= 1, "an integer >= 1"),
    ("numverify.default_step", lambda v: v > 0, "positive"),
    ("numverify.relaxation_tolerance", lambda v: v > 0, "positive"),
    ("numverify.relaxation_max_iterations", lambda v: isinstance(v, int) and v >= 1, ">= 1"),
    ("numverify.exact_tolerance", lambda v: v > 0, "positive"),
    ("numverify.fd_tolerance", lambda v: v > 0, "positive"),
    (
        "numverify.default_extent",
        lambda v: len(v) == 2 and float(v[0]) < float(v[1]),
        "a pair [min, max] with min < max",
    ),
    ("output.decimal_precision", lambda v: isinstance(v, int) and 1 <= v <= 17, "in 1..17"),
    ("output.json_indent", lambda v: isinstance(v, int) and v >= 0, "an integer >= 0"),
)


class SamplingPlan(NamedTuple):
    """Parameters of seeded sampling in the box [low, high]^m."""

    seed: int
    count: int
    low: float
    high: float
    rtol: float


class Config:
    """
    Toolkit configuration.

    Starts from ``DEFAULT_CONFIG``; a YAML file is deep-merged on top so it
    only needs the keys it changes. Values are addressed by dotted keys such
    as ``"numverify.min_nodes"``.
    """

    def __init__(self, config_file: Optional[Union[str, Path]] = None):
        self._config = copy.deepcopy(DEFAULT_CONFIG)
        self.config_file = config_file

        if config_file:
            self.load_config(config_file)

        self._validate_config()

    def load_config(self, config_file: Union[str, Path]) -> None:
        """
        Merge a YAML file into the current settings.

        Raises:
            ImportError: If PyYAML is not installed
            FileNotFoundError: If the file does not exist
            ConfigError: If the file is not valid YAML or holds anything but a mapping
        """
        if not YAML_AVAILABLE:
            raise ImportError("PyYAML is required for configuration file support")

        path = Path(config_file)
        if not path.exists():
            raise FileNotFoundError(f"Configuration file not found: {path}")

        with open(path, "r", encoding="utf-8") as handle:
            try:
                overrides = yaml.safe_load(handle) or {}
            except yaml.YAMLError as exc:
                raise ConfigError(f"Invalid YAML in {path}: {exc}") from exc

        if not isinstance(overrides, dict):
            raise ConfigError(
                f"Configuration file must contain a mapping, got {type(overrides).__name__}"
            )

        logger.debug("Merging configuration from %s", path)
        _deep_merge(self._config, overrides)

    def save_config(self, config_file: Union[str, Path]) -> None:
        """Write the current settings as YAML, creating parent directories."""
        if not YAML_AVAILABLE:
            raise ImportError("PyYAML is required to save configuration files")

        path = Path(config_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as handle:
            yaml.safe_dump(self._config, handle, default_flow_style=False, indent=2)

    def get(self, key: str, default: Any = None) -> Any:
        """Value at a dotted key, or ``default`` when any segment is missing."""
        node: Any = self._config
        for part in key.split("."):
            if not isinstance(node, dict) or part not in node:
                return default
            node = node[part]
        return node

    def set(self, key: str, value: Any) -> None:
        """Set a dotted key, creating sections on the way; revalidates."""
        *sections, leaf = key.split(".")
        node = self._config
        for part in sections:
            node = node.setdefault(part, {})
        node[leaf] = value
        self._validate_config()

    def reset_to_defaults(self) -> None:
        self._config = copy.deepcopy(DEFAULT_CONFIG)

    def sampling(self) -> SamplingPlan:
        """Sampling parameters of the numeric equality and regularity fallbacks."""
        return SamplingPlan(
            int(self.get("symbolic.fallback_seed")),
            int(self.get("symbolic.fallback_samples")),
            float(self.get("symbolic.sample_low")),
            float(self.get("symbolic.sample_high")),
            float(self.get("symbolic.numeric_rtol")),
        )

    def _validate_config(self) -> None:
        """
        Raises:
            ConfigError: Naming the first offending key and its value
        """
        for key, predicate, requirement in _RULES:
            value = self.get(key)
            try:
                valid = value is not None and predicate(value)
            except TypeError:
                valid = False
            if not valid:
                raise ConfigError(f"{key} must be {requirement}, got {value!r}")

        low, high = self.get("symbolic.sample_low"), self.get("symbolic.sample_high")
        if not low < high:
            raise ConfigError(f"Sample box must satisfy low < high, got [{low}, {high}]")

        level = str(self.get("logging.level", "WARNING")).upper()
        if level not in LOG_LEVELS:
            raise ConfigError(f"Invalid logging level '{level}'. Valid levels: {LOG_LEVELS}")

    def to_dict(self) -> Dict[str, Any]:
        """Deep copy of the settings."""
        return copy.deepcopy(self._config)

    def __getitem__(self, key: str) -> Any:
        return self.get(key)

    def __setitem__(self, key: str, value: Any) -> None:
        self.set(key, value)

    def __contains__(self, key: str) -> bool:
        return self.get(key) is not None

    def __repr__(self) -> str:
        return f"Config({self.config_file or 'defaults'})"


def _deep_merge(base: Dict[str, Any], update: Dict[str, Any]) -> None:
    for key, value in update.items():
        if isinstance(base.get(key), dict) and isinstance(value, dict):
            _deep_merge(base[key], value)
        else:
            base[key] = value


def load_config(config_file: Optional[Union[str, Path]] = None) -> Config:
    """Configuration from ``config_file``, or the defaults."""
    return Config(config_file)


def get_config_paths() -> Dict[str, Path]:
    """Locations searched for a configuration file, in priority order."""
    cwd = Path.cwd()
    return {
        "current_dir": cwd / "ksym_config.yaml",
        "project_root": cwd / "config" / "default_config.yaml",
        "user_home": Path.home() / ".ksymplectic" / "config.yaml",
    }


def _existing_config_files() -> Iterator[Path]:
    return (path for path in get_config_paths().values() if path.exists())


def find_config_file() -> Optional[Path]:
    """First existing file of ``get_config_paths()``, if any."""
    return next(_existing_config_files(), None)


def load_or_create_config(config_file: Optional[Union[str, Path]] = None) -> Config:
    """
    Configuration from ``config_file``, else from the first standard
    location that exists, else the defaults.
    """
    if config_file:
        return load_config(config_file)

    found = find_config_file()
    if found and YAML_AVAILABLE:
        return load_config(found)

    return Config()


def configure_logging(config: Optional[Config] = None, verbose: bool = False) -> None:
    """
    Apply the ``logging`` section to the ``ksymplectic`` logger.

    Replaces any handlers installed by an earlier call.

    Args:
        config: Configuration to apply (global configuration if omitted)
        verbose: Force DEBUG regardless of the configured level
    """
    config = config or get_global_config()
    level = "DEBUG" if verbose else str(config.get("logging.level", "WARNING")).upper()
    formatter = logging.Formatter(config.get("logging.log_format"))

    package_logger = logging.getLogger("ksymplectic")
    package_logger.setLevel(level)
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)

    handlers = [logging.StreamHandler()]
    if config.get("logging.file_logging"):
        log_dir = Path(config.get("logging.log_directory", "logs"))
        log_dir.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_dir / "ksymplectic.log", encoding="utf-8"))

    for handler in handlers:
        handler.setFormatter(formatter)
        package_logger.addHandler(handler)


_global_config: Optional[Config] = None


def get_global_config() -> Config:
    """Process-wide configuration, loaded on first use."""
    global _global_config
    if _global_config is None:
        _global_config = load_or_create_config()
    return _global_config


def set_global_config(config: Optional[Config]) -> None:
    """Replace the process-wide configuration; ``None`` reloads it lazily."""
    global _global_config
    _global_config = config


__all__ = [
    "Config",
    "SamplingPlan",
    "load_config",
    "get_config_paths",
    "find_config_file",
    "load_or_create_config",
    "configure_logging",
    "get_global_config",
    "set_global_config",
    "DEFAULT_CONFIG",
]
