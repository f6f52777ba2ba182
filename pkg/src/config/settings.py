"""
Application settings using pydantic-settings

Loads environment variables from .env.local file
"""

from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings loaded from environment variables"""

    # Verification
    seed: int = Field(
        default=20240611,
        alias="MSR_SEED",
        description="Default seed for Bargmann-invariant triple sampling",
    )
    verify_triples: int = Field(
        default=10_000,
        alias="MSR_VERIFY_TRIPLES",
        description="Number of random sample triples checked by NPC verification",
    )

    # Curve generation
    samples: int = Field(
        default=401,
        alias="MSR_SAMPLES",
        description="Default number of parameter samples per generated curve",
    )

    # Rendering
    render_size: int = Field(
        default=480,
        alias="MSR_RENDER_SIZE",
        description="Rendered SVG width and height in pixels",
    )
    render_view: str = Field(
        default="1,0.6,0.4",
        alias="MSR_RENDER_VIEW",
        description="Orthographic view direction as 'x,y,z' (normalized on use)",
    )

    # Logging
    log_level: str = Field(
        default="WARNING",
        alias="MSR_LOG_LEVEL",
        description="Logging level",
    )

    model_config = SettingsConfigDict(
        env_file=".env.local",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    @field_validator("verify_triples", "samples", "render_size")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value <= 0:
            raise ValueError(f"must be positive, got {value}")
        return value

    @property
    def view_direction(self) -> tuple[float, float, float]:
        """Parsed render view direction"""
        parts = [float(p) for p in self.render_view.split(",")]
        if len(parts) != 3:
            raise ValueError(f"MSR_RENDER_VIEW must have three components: {self.render_view}")
        return parts[0], parts[1], parts[2]


@lru_cache()
def get_settings() -> Settings:
    """
    Get cached application settings

    Returns:
        Settings: Application settings instance
    """
    return Settings()
