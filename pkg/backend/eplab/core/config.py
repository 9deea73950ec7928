#!/usr/bin/env python3
"""
Core configuration module for eplab
PydanticSettings-backed configuration: tolerances, SVD backend, seeds, logging
"""

from pathlib import Path
from typing import Literal, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..models.matrix import Tolerance


class Settings(BaseSettings):
    """
    Application settings
    Every field can be overridden through an ``EPLAB_``-prefixed environment variable
    """

    model_config = SettingsConfigDict(
        env_prefix="EPLAB_",
        case_sensitive=True,
        # backend/.env, resolved relative to this file so the CLI works from any cwd
        env_file=str(Path(__file__).resolve().parents[2] / ".env"),
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Project metadata
    PROJECT_NAME: str = "eplab"
    VERSION: str = "1.0.0"
    DESCRIPTION: str = "EP operators, Moore-Penrose inverses and Fuglede-Putnam type checkers"

    # Numerical tolerances
    EQ_TOL: float = Field(default=1e-9, description="Hybrid absolute/relative Frobenius equality threshold")
    RANK_TOL_FACTOR: Optional[float] = Field(
        default=None,
        description="Rank cutoff factor times sigma_max; None means max(m, n) * machine epsilon",
    )
    SUITE_RANK_TOL_FACTOR: float = Field(
        default=1e-10,
        description="Rank cutoff factor used by the random property suite",
    )

    # SVD backend
    SVD_METHOD: Literal["lapack", "jacobi"] = Field(default="lapack", description="SVD algorithm")
    JACOBI_MAX_SWEEPS: int = Field(default=60, description="Sweep budget for the Jacobi SVD")

    # Random property suite
    SEED: int = Field(default=0, description="Default seed for random-suite (env EPLAB_SEED)")
    SUITE_TRIALS: int = Field(default=200, description="Default trials per property check")
    SUITE_MAX_DIM: int = Field(default=12, description="Default largest random dimension")
    SUITE_WORKERS: int = Field(default=4, description="Thread pool size for random-suite trials")

    # Logging Configuration
    LOG_LEVEL: str = Field(default="INFO", description="Logging level")
    LOG_FORMAT: Literal["json", "console"] = Field(default="console", description="Log format: json or console")

    @field_validator("EQ_TOL", "SUITE_RANK_TOL_FACTOR")
    @classmethod
    def _positive(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("must be strictly positive")
        return value

    @field_validator("RANK_TOL_FACTOR")
    @classmethod
    def _positive_or_none(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and not value > 0:
            raise ValueError("must be strictly positive when set")
        return value

    @field_validator("JACOBI_MAX_SWEEPS", "SUITE_WORKERS", "SUITE_TRIALS")
    @classmethod
    def _at_least_one(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    @field_validator("SUITE_MAX_DIM")
    @classmethod
    def _at_least_two(cls, value: int) -> int:
        if value < 2:
            raise ValueError("must be at least 2")
        return value

    def tolerance(self, eq_tol: Optional[float] = None) -> Tolerance:
        """Tolerance for library calls; ``eq_tol`` overrides the configured value"""
        return Tolerance(
            eq_tol=self.EQ_TOL if eq_tol is None else eq_tol,
            rank_tol_factor=self.RANK_TOL_FACTOR,
        )

    def suite_tolerance(self, eq_tol: Optional[float] = None) -> Tolerance:
        """Tolerance for randomized sweeps (generated blocks are well conditioned)"""
        return Tolerance(
            eq_tol=self.EQ_TOL if eq_tol is None else eq_tol,
            rank_tol_factor=self.SUITE_RANK_TOL_FACTOR,
        )


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """
    Get the process-wide settings instance

    Returns:
        Settings instance
    """
    return settings
