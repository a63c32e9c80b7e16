"""Run configuration: model defaults < config file < command-line flags."""

import logging
import math
from pathlib import Path
from typing import Any

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from reporting.emit import OutputFormat
from suites.custom_suite_base import Suites

logger = logging.getLogger(__name__)

# Config-file keys and their model fields; '-' and '_' are interchangeable, case is ignored.
FILE_KEYS = {
    "seed": "seed",
    "samples": "samples",
    "tol_exact": "tol_exact",
    "tol_fd": "tol_fd",
    "fd_step": "fd_step",
    "scale_min": "scale_min",
    "scale_max": "scale_max",
    "suites": "suites",
    "format": "output_format",
    "output_format": "output_format",
    "out": "out",
}


class ConfigurationError(ValueError):
    pass


class SuiteConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    seed: int = 0
    samples: int = 200
    tol_exact: float = 1e-10
    tol_fd: float = 1e-6
    fd_step: float = 1e-4
    momentum_scale_range: tuple[float, float] = (1e-3, 1e3)
    suites: list[str] = Field(default_factory=lambda: [s.value for s in Suites])
    output_format: OutputFormat = OutputFormat.BOTH
    out: Path = Path("reports")

    @field_validator("samples")
    @classmethod
    def _samples_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"samples must be >= 1, got {value}")
        return value

    @field_validator("tol_exact", "tol_fd", "fd_step")
    @classmethod
    def _positive_finite(cls, value: float) -> float:
        if not (math.isfinite(value) and value > 0):
            raise ValueError(f"must be positive and finite, got {value}")
        return value

    @field_validator("suites")
    @classmethod
    def _known_suites(cls, value: list[str]) -> list[str]:
        valid = [s.value for s in Suites]
        unknown = [name for name in value if name not in valid]
        if unknown:
            raise ValueError(f"unknown suite(s) {', '.join(unknown)}; valid suites are: {', '.join(valid)}")
        if not value:
            raise ValueError("at least one suite must be selected")
        return list(dict.fromkeys(value))

    @model_validator(mode="after")
    def _ordered_range(self) -> "SuiteConfig":
        lo, hi = self.momentum_scale_range
        if not (0 < lo <= hi and math.isfinite(hi)):
            raise ValueError(f"momentum scale range must be positive and ordered, got {self.momentum_scale_range}")
        return self

    def echo(self) -> dict[str, Any]:
        """Config as plain JSON data, for the report environment."""
        return self.model_dump(mode="json")


def read_config_file(path: Path) -> dict[str, Any]:
    """Flat KEY=value file parsed with python-dotenv, mapped onto model field names."""
    if not path.is_file():
        raise ConfigurationError(f"Config file not found: {path}")
    values: dict[str, Any] = {}
    for raw_key, raw_value in dotenv_values(path).items():
        key = raw_key.strip().lower().replace("-", "_")
        if key not in FILE_KEYS:
            raise ConfigurationError(
                f"Unknown config key {raw_key!r} in {path}; valid keys are: {', '.join(FILE_KEYS)}"
            )
        if raw_value is None:
            raise ConfigurationError(f"Config key {raw_key!r} in {path} has no value")
        field = FILE_KEYS[key]
        values[field] = [s.strip() for s in raw_value.split(",") if s.strip()] if field == "suites" else raw_value
    return values


def _fold_scale(values: dict[str, Any], base: SuiteConfig) -> dict[str, Any]:
    lo = values.pop("scale_min", None)
    hi = values.pop("scale_max", None)
    if lo is not None or hi is not None:
        current = values.get("momentum_scale_range", base.momentum_scale_range)
        values["momentum_scale_range"] = (
            float(lo) if lo is not None else current[0],
            float(hi) if hi is not None else current[1],
        )
    return values


def load_config(path: Path | None = None, overrides: dict[str, Any] | None = None) -> SuiteConfig:
    """Build a validated config; raises ConfigurationError before any computation."""
    defaults = SuiteConfig()
    merged: dict[str, Any] = {}
    try:
        if path is not None:
            merged.update(_fold_scale(read_config_file(path), defaults))
        cli = {k: v for k, v in (overrides or {}).items() if v is not None}
        merged.update(_fold_scale(cli, SuiteConfig.model_validate(merged) if merged else defaults))
        config = SuiteConfig.model_validate(merged)
    except ValidationError as exc:
        raise ConfigurationError(str(exc)) from exc
    except ValueError as exc:
        if isinstance(exc, ConfigurationError):
            raise
        raise ConfigurationError(str(exc)) from exc
    logger.debug("Configuration: %s", config.echo())
    return config
