"""
DimDatum - Configuration Management

Centralized configuration using Pydantic Settings for type-safe,
validated environment variable handling.
"""

import os
from functools import lru_cache
from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


def default_cache_dir() -> str:
    """$XDG_CACHE_HOME/dimdatum, else ~/.cache/dimdatum."""
    base = os.environ.get("XDG_CACHE_HOME") or str(Path.home() / ".cache")
    return str(Path(base) / "dimdatum")


class Settings(BaseSettings):
    """Application settings loaded from DIMDATUM_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="DIMDATUM_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Cache Configuration
    cache_dir: str = Field(
        default_factory=default_cache_dir,
        description="Weight-multiplicity cache directory",
    )

    # Execution
    jobs: int = Field(default=1, ge=1, le=256, description="Worker processes per suite")
    seed: int = Field(default=0, ge=0, description="Seed for random evaluation points")

    # Output
    output_format: Literal["json", "text"] = Field(default="json")

    # Numeric Checks
    pointwise_tolerance: float = Field(default=1e-10, gt=0, le=1e-3)
    quadrature_tolerance: float = Field(default=1e-9, gt=0, le=1e-3)
    density_points: int = Field(default=100, ge=1, le=100_000)
    quadrature_points: int = Field(default=512, ge=64, le=1_000_000)

    # Exact Checks
    max_polynomial_rank: int = Field(default=3, ge=1, le=7)
    theorem_cutoff: int = Field(default=40, ge=1)

    # Application Settings
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(default="WARNING")
    debug: bool = Field(default=False)


@lru_cache
def get_settings() -> Settings:
    """
    Get cached settings instance.

    Uses lru_cache to ensure settings are only loaded once
    and reused across the application.
    """
    return Settings()
