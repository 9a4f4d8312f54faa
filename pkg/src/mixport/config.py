import os
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import yaml

from .exceptions import ConfigError

SEED_ENV_VAR = "MIXPORT_SEED"

COMMANDS = ("teleport", "sweep", "figures", "verify")
FORMATS = ("csv", "json")


class Config:
    _warnings_enabled = True

    # Tolerances shared by every module.
    herm_tol = 1e-10
    psd_tol = 1e-10
    trace_tol = 1e-10
    rank_tol = 1e-10
    property_slack = 1e-12
    degenerate_prob = 1e-14

    default_seed = 20240917
    default_samples = 1000
    figure_points = 101


def set_warnings(enabled: bool):
    """
    Enable or disable library warnings.

    Args:
        enabled: True to enable warnings, False to disable.
    """
    Config._warnings_enabled = enabled


def warnings_enabled() -> bool:
    """Check if warnings are enabled."""
    return Config._warnings_enabled


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a single CLI invocation needs.

    `params` (p1 or r) and `abs_y` are the sweep grid; `phases` the
    arguments of y in radians. `input` is (x, Re y, Im y).
    """
    command: str
    channel: str = "meps"
    input: Tuple[float, float, float] = (0.5, 0.0, 0.0)
    params: Tuple[float, ...] = ()
    abs_y: Tuple[float, ...] = ()
    phases: Tuple[float, ...] = (0.0,)
    x: float = 0.5
    seed: int = Config.default_seed
    samples: int = Config.default_samples
    output: Optional[str] = None
    format: str = "json"
    workers: int = 1
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"Unknown command '{self.command}'. Supported: {', '.join(COMMANDS)}")
        if self.format not in FORMATS:
            raise ConfigError(f"Unknown format '{self.format}'. Supported: {', '.join(FORMATS)}")
        if len(self.input) != 3:
            raise ConfigError("input must be a triple (x, Re y, Im y)")
        if self.samples <= 0:
            raise ConfigError(f"samples must be positive, got {self.samples}")
        if self.workers <= 0:
            raise ConfigError(f"workers must be positive, got {self.workers}")


_YAML_KEYS = {
    "channel", "input", "params", "abs_y", "phases", "x", "seed",
    "samples", "output", "format", "workers",
}


def load_yaml(path: str) -> Dict[str, Any]:
    """Reads a YAML run file and returns the recognised keys."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}")
    except yaml.YAMLError as e:
        raise ConfigError(f"Invalid YAML in {path}: {e}")

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {path} must contain a mapping")
    unknown = set(data) - _YAML_KEYS
    if unknown:
        raise ConfigError(f"Unknown config keys in {path}: {', '.join(sorted(unknown))}")
    for key in ("input", "params", "abs_y", "phases"):
        if key in data:
            data[key] = tuple(float(v) for v in data[key])
    return data


def build_run_config(command: str, file_values: Optional[Dict[str, Any]] = None,
                     **overrides: Any) -> RunConfig:
    """
    Layers defaults < YAML values < explicit overrides < MIXPORT_SEED.

    Overrides equal to None are ignored so argparse namespaces can be passed
    through untouched.
    """
    values: Dict[str, Any] = dict(file_values or {})
    values.update({k: v for k, v in overrides.items() if v is not None})

    env_seed = os.environ.get(SEED_ENV_VAR)
    if env_seed is not None:
        try:
            values["seed"] = int(env_seed)
        except ValueError:
            raise ConfigError(f"{SEED_ENV_VAR} must be an integer, got '{env_seed}'")

    try:
        return RunConfig(command=command, **values)
    except TypeError as e:
        raise ConfigError(f"Invalid configuration: {e}")
