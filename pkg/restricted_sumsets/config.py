"""Settings for rsumset, read from RSUMSET_* variables or a .env file.

Covers log output, the caps that stop polynomial expansion and grid
evaluation from running away, and the defaults of the scan command.
"""

from functools import lru_cache

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables.

    Configuration can be overridden by setting environment variables, e.g.:
        export RSUMSET_DEBUG=true
        export RSUMSET_MAX_TERMS=1000000
    """

    model_config = SettingsConfigDict(
        env_prefix="RSUMSET_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # ===== LOGGING SETTINGS =====
    # Human-readable console logs instead of JSON lines
    debug: bool = False
    # Minimum level for structlog output on stderr
    log_level: str = "WARNING"

    # ===== ALGEBRA LIMITS =====
    # Largest number of terms any polynomial expansion may reach
    max_terms: int = 10_000_000
    # Largest grid (product of set sizes) evaluated in one numpy pass
    max_grid_points: int = 5_000_000
    # Largest arity for which the alternating sum over S_n is enumerated
    max_permutation_arity: int = 8

    # ===== WITNESS SEARCH =====
    # Run the brute-force witness search next to the recursive construction
    witness_cross_check: bool = True

    # ===== SCAN SETTINGS =====
    default_jobs: int = 1
    # Number of instances handed to a worker at once
    scan_chunk_size: int = 256
    default_seed: int = 0
    # Random instances per parameter point when sampling
    default_samples: int = 200
    # Draw a tqdm progress bar on stderr during scans
    show_progress: bool = False

    @field_validator(
        "max_terms",
        "max_grid_points",
        "max_permutation_arity",
        "default_jobs",
        "scan_chunk_size",
        "default_samples",
    )
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Ensure caps and counts are positive.

        Args:
            v: The configured value

        Returns:
            The validated value

        Raises:
            ValueError: If the value is zero or negative
        """
        if v <= 0:
            raise ValueError("limits and counts must be positive integers")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Normalise the log level name."""
        level = v.strip().upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level: {v}")
        return level


# ===== SETTINGS SINGLETON =====
@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance.

    Returns:
        Settings: Singleton instance of the toolkit settings
    """
    return Settings()
