"""
Unified configuration management for the simulation toolkit.

Single source of truth for run defaults (slots, seed, quadrature tolerances) with
environment-aware settings loaded from settings.toml and OBSIM_* environment variables.
"""

import os
from enum import StrEnum
from pathlib import Path

from dynaconf import Dynaconf
from pydantic_settings import BaseSettings, SettingsConfigDict

from app import __version__
from app.logging import setup_logging

PROJECT_ROOT = Path(__file__).resolve().parent.parent


class Environment(StrEnum):
    TESTING = "testing"
    LOCAL = "local"


def resolve_environment() -> Environment:
    """Environment detection from OBSIM_ENVIRONMENT.

    Returns:
        Environment: 'testing' or 'local'
    """
    if os.getenv("OBSIM_ENVIRONMENT") == Environment.TESTING:
        return Environment.TESTING

    # Default to local runs
    return Environment.LOCAL


_environment = resolve_environment()

# Load settings from TOML files
_settings = Dynaconf(
    envvar_prefix="OBSIM",
    root_path=str(PROJECT_ROOT),
    settings_files=["settings.toml"],
    environments=True,
    env=_environment,
    load_dotenv=True,
)

# Initialize logging
logger = setup_logging(_settings.get("log_level", "INFO"))
logger.debug(f"Detected environment: {_environment}")


class Config(BaseSettings):
    """Unified configuration using Pydantic.

    Values come from settings.toml (per environment) and can be overridden with
    OBSIM_<NAME> environment variables, e.g. OBSIM_DEFAULT_SLOTS=5000.
    """

    model_config = SettingsConfigDict(env_prefix="OBSIM_")

    # Environment
    environment: Environment = _environment
    debug: bool = _settings.get("debug", False)
    log_level: str = _settings.get("log_level", "INFO")

    # Artifact identity (echoed into every output header)
    artifact_name: str = _settings.get("artifact_name", "obsim")
    artifact_version: str = __version__

    # Monte Carlo defaults
    default_slots: int = _settings.get("default_slots", 20000)
    default_seed: int = _settings.get("default_seed", 42)
    default_workers: int = _settings.get("default_workers", 1)

    # Adaptive quadrature
    quad_abs_tol: float = _settings.get("quad_abs_tol", 1e-8)
    quad_limit: int = _settings.get("quad_limit", 200)

    # Construction registry
    constructions_file: Path = PROJECT_ROOT / "config" / "constructions.yaml"


# Export single config object
config = Config()
