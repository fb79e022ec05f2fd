from dataclasses import dataclass
import json
import os
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Optional, TypeVar

from binary_slab.utils.exceptions import ConfigurationError
from binary_slab.utils.logger import logger

T = TypeVar("T")

# Keys accepted in a JSON config file; they mirror the CLI flags.
CONFIG_KEYS = frozenset(
    {
        "set",
        "sets",
        "M",
        "choice",
        "model",
        "eta",
        "seed",
        "dx_max",
        "tol",
        "max_iters",
        "quad",
        "ci",
        "confidence",
        "min_n",
        "max_n",
        "workers",
        "grid_cells",
        "ci_everywhere",
        "out",
        "log_level",
        "materials",
        "lambdas",
        "X",
    }
)


def _env(name: str, default: str, cast: Callable[[str], T]) -> T:
    raw = os.getenv(name, default)
    try:
        return cast(raw)
    except ValueError:
        raise ConfigurationError(f"{name}={raw!r} is not a valid {cast.__name__}")


@dataclass
class AppConfig(object):
    """
    Application-wide configuration.

    Holds the defaults that apply to every subcommand: logging level, worker
    count, base seed, output directory and the numerical knobs shared by all
    transport solves.
    """

    log_level: str
    workers: int
    base_seed: int
    output_dir: str
    quadrature_order: int
    tolerance: float
    max_iterations: int
    grid_cells: int

    @classmethod
    def load(cls) -> "AppConfig":
        """
        Create an AppConfig instance from environment variables.

        Returns:
            AppConfig: Configured instance with values from environment variables
                      or defaults if the environment variables are not set.

        Raises:
            ConfigurationError: If a variable cannot be parsed or is out of range.
        """
        config = cls(
            log_level=os.getenv("LOG_LEVEL", "INFO").upper(),
            workers=_env("WORKERS", "1", int),
            base_seed=_env("BASE_SEED", "12345", int),
            output_dir=os.getenv("OUTPUT_DIR", "results"),
            quadrature_order=_env("QUADRATURE_ORDER", "16", int),
            tolerance=_env("TOLERANCE", "1e-8", float),
            max_iterations=_env("MAX_ITERATIONS", "100000", int),
            grid_cells=_env("GRID_CELLS", "200", int),
        )
        if config.workers <= 0:
            raise ConfigurationError("WORKERS must be positive")
        if config.tolerance <= 0:
            raise ConfigurationError("TOLERANCE must be positive")

        logger.info(
            f"Config: log_level={config.log_level}, workers={config.workers}, "
            f"seed={config.base_seed}, quad={config.quadrature_order}, "
            f"tol={config.tolerance}"
        )
        return config

    def as_settings(self) -> Dict[str, Any]:
        """Express the environment defaults under the CLI/JSON key names."""
        return {
            "log_level": self.log_level,
            "workers": self.workers,
            "seed": self.base_seed,
            "out": self.output_dir,
            "quad": self.quadrature_order,
            "tol": self.tolerance,
            "max_iters": self.max_iterations,
            "grid_cells": self.grid_cells,
        }


def load_config_file(path: Optional[str]) -> Dict[str, Any]:
    """
    Read a JSON config document whose keys mirror the CLI flags.

    Args:
        path: Location of the JSON file, or None for an empty config.

    Returns:
        Dict[str, Any]: The parsed settings.

    Raises:
        ConfigurationError: If the file is missing, malformed, or has unknown keys.
    """
    if not path:
        return {}

    try:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigurationError(f"Config file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"Config file {path} is not valid JSON: {e}")

    if not isinstance(document, dict):
        raise ConfigurationError(f"Config file {path} must hold a JSON object")

    unknown = sorted(set(document) - CONFIG_KEYS)
    if unknown:
        raise ConfigurationError(f"Unknown config keys in {path}: {unknown}")

    logger.debug(f"Loaded config file {path}: {document}")
    return document


def merge_settings(*layers: Mapping[str, Any]) -> Dict[str, Any]:
    """
    Merge settings layers; later layers win, None values never override.

    The CLI passes (environment defaults, JSON file, command-line flags).
    """
    merged: Dict[str, Any] = {}
    for layer in layers:
        for key, value in layer.items():
            if value is not None:
                merged[key] = value
    return merged
