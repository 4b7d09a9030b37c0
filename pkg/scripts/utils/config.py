"""Configuration loader and validator for config.yaml.

Loads config.yaml from the project root and provides typed access to all
configuration sections via Pydantic models. Also loads .env so that
KTREE_CONFIG can point at an alternative file.
"""

import logging
import os
from pathlib import Path
from typing import Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, model_validator

logger = logging.getLogger(__name__)

# Project root: two levels up from scripts/utils/config.py
PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent
CONFIG_PATH = PROJECT_ROOT / "config.yaml"
ENV_PATH = PROJECT_ROOT / ".env"
CONFIG_ENV_VAR = "KTREE_CONFIG"


# ---------------------------------------------------------------------------
# Config section models
# ---------------------------------------------------------------------------

class ProjectConfig(BaseModel):
    """Top-level project metadata."""
    name: str = "ktree"
    version: str = "0.1.0"


class PrecisionConfig(BaseModel):
    """Digit budget for approximate (non-quadratic) k."""
    approx_digits: int = Field(default=64, ge=8)
    max_digits: int = Field(default=4096, ge=8)

    @model_validator(mode="after")
    def _cap_not_below_start(self) -> "PrecisionConfig":
        if self.max_digits < self.approx_digits:
            raise ValueError("max_digits must be >= approx_digits")
        return self


class LimitsConfig(BaseModel):
    """Enumeration caps."""
    max_nodes: int = Field(default=10_000_000, ge=1)


class SweepConfig(BaseModel):
    """Defaults for rho sweeps and decimal rendering."""
    n_iters: int = Field(default=40, ge=1)
    render_digits: int = Field(default=15, ge=1)
    progress_every: int = Field(default=1000, ge=1)


class IndicatorsConfig(BaseModel):
    """Sampling defaults for indicator exports and grandparent grids."""
    resolution: int = Field(default=200, ge=1)
    grid_size: int = Field(default=1000, ge=1)
    boundary_digits: int = Field(default=12, ge=1)


class VerificationConfig(BaseModel):
    """Cross-check switches for the verify command."""
    cross_check: bool = False
    rho_iters: int = Field(default=60, ge=1)
    brute_force_depth: int = Field(default=12, ge=0)
    brute_force_nodes: int = Field(default=100_000, ge=1)


class LoggingConfig(BaseModel):
    """Root logger level."""
    level: str = "INFO"


# ---------------------------------------------------------------------------
# Top-level config model
# ---------------------------------------------------------------------------

class AppConfig(BaseModel):
    """Complete application configuration loaded from config.yaml."""
    project: ProjectConfig = Field(default_factory=ProjectConfig)
    precision: PrecisionConfig = Field(default_factory=PrecisionConfig)
    limits: LimitsConfig = Field(default_factory=LimitsConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    indicators: IndicatorsConfig = Field(default_factory=IndicatorsConfig)
    verification: VerificationConfig = Field(default_factory=VerificationConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)


# ---------------------------------------------------------------------------
# Singleton loader
# ---------------------------------------------------------------------------

_config: Optional[AppConfig] = None


def _resolve_path(config_path: Optional[Path]) -> Path:
    """Pick the config path: explicit argument, then KTREE_CONFIG, then the default."""
    if config_path is not None:
        return config_path
    if ENV_PATH.exists():
        load_dotenv(ENV_PATH)
        logger.debug("Loaded environment variables from %s", ENV_PATH)
    override = os.environ.get(CONFIG_ENV_VAR)
    if override:
        return Path(override)
    return CONFIG_PATH


def load_config(config_path: Optional[Path] = None) -> AppConfig:
    """Load and validate configuration from a YAML file.

    A missing default config.yaml yields the built-in defaults; a missing
    file that was asked for explicitly is an error.

    Args:
        config_path: Path to config.yaml. Defaults to KTREE_CONFIG or
            PROJECT_ROOT/config.yaml.

    Returns:
        A validated AppConfig instance.

    Raises:
        FileNotFoundError: If an explicitly requested config file does not exist.
        yaml.YAMLError: If the YAML is malformed.
        pydantic.ValidationError: If the config fails validation.
    """
    global _config

    path = _resolve_path(config_path)

    if not path.exists():
        if config_path is not None or path != CONFIG_PATH:
            raise FileNotFoundError(f"Config file not found: {path}")
        logger.debug("No config.yaml at %s, using defaults", path)
        _config = AppConfig()
        return _config

    with open(path, "r", encoding="utf-8") as f:
        raw = yaml.safe_load(f)

    _config = AppConfig.model_validate(raw or {})
    logger.debug(
        "Config loaded from %s: approx_digits=%d, max_digits=%d, max_nodes=%d",
        path,
        _config.precision.approx_digits,
        _config.precision.max_digits,
        _config.limits.max_nodes,
    )
    return _config


def get_config() -> AppConfig:
    """Return the cached config, loading it if necessary.

    Returns:
        The current AppConfig singleton.
    """
    global _config
    if _config is None:
        _config = load_config()
    return _config


def reset_config() -> None:
    """Drop the cached config so the next get_config() reloads it."""
    global _config
    _config = None
