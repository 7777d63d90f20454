"""
Application configuration.
All settings are loaded from environment variables (prefix FLOQUET_) with
defaults that reproduce the documented experiments.

Precedence for values that also have a CLI flag:
- explicit flag (e.g. --threads, --seed)
- environment variable (e.g. FLOQUET_THREADS)
- default below
"""
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="FLOQUET_",
        env_file=".env",
        case_sensitive=True,
        extra="ignore",
    )

    # Application
    APP_NAME: str = "hexfloquet"
    APP_VERSION: str = "0.1.0"

    # Sampling
    THREADS: int = Field(default=1, ge=1)
    DEFAULT_SEED: int = Field(default=20220, ge=0)
    SHOT_CHUNK: int = Field(default=1024, ge=1)

    # Detector verification
    VERIFY_TRIALS: int = Field(default=100, ge=1)
    VERIFY_SEED: int = Field(default=7, ge=0)

    # Dense oracle qubit limit (state vector holds 2**n amplitudes)
    DENSE_MAX_QUBITS: int = Field(default=14, ge=1, le=20)

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FILE: Optional[str] = None

    def resolve_threads(self, requested: Optional[int]) -> int:
        """Worker count: the explicit request wins, then FLOQUET_THREADS."""
        if requested is not None and requested >= 1:
            return requested
        return self.THREADS

    def resolve_seed(self, requested: Optional[int]) -> int:
        """Base seed: the explicit request wins, then the documented default."""
        return self.DEFAULT_SEED if requested is None else requested


settings = Settings()
