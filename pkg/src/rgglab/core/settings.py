"""Settings management for rgglab using pydantic-settings."""

from functools import lru_cache
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)


class QuadratureSettings(BaseModel):
    model_config = ConfigDict(extra="ignore")

    min_nodes: int = Field(default=256, ge=8)
    doubling_tolerance: float = Field(default=1e-8, gt=0)
    moment_tolerance: float = Field(default=1e-8, gt=0)


class SpectrumSettings(BaseModel):
    model_config = ConfigDict(extra="ignore")

    kmax: int = Field(default=40, ge=1)
    adaptive_tolerance: float = Field(default=1e-14, gt=0)
    kmax_cap: int = Field(default=200, ge=1)
    bessel_warning: float = Field(default=1e-3, gt=0)


class RunSettings(BaseModel):
    model_config = ConfigDict(extra="ignore")

    workers: int = Field(default=1, ge=1)
    cell_timeout: float = Field(default=600.0, gt=0)
    output_dir: Path = Path("results")
    log_level: str = "INFO"


class ApiSettings(BaseModel):
    model_config = ConfigDict(extra="ignore")

    max_n: int = Field(default=512, ge=3)
    max_trials: int = Field(default=500, ge=30)


class Settings(BaseSettings):
    """Runtime settings.

    Every section has defaults, so ``Settings()`` is a complete configuration.
    Values come from init arguments only; rgglab reads no environment
    variables, all state arrives through CLI flags and config files.
    """

    model_config = SettingsConfigDict(
        nested_model_default_partial_update=False,
        extra="ignore",
    )

    quadrature: QuadratureSettings = QuadratureSettings()
    spectrum: SpectrumSettings = SpectrumSettings()
    run: RunSettings = RunSettings()
    api: ApiSettings | None = None

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)

    def is_api_enabled(self) -> bool:
        """Check if the HTTP surface is enabled.

        Returns:
            bool: True if API settings are configured, False otherwise
        """
        return self.api is not None


@lru_cache
def get_settings() -> Settings:
    """Get the cached default settings instance.

    Library functions fall back to this instance when no explicit settings
    are passed. The CLI builds its own ``Settings`` from flags instead.

    Returns:
        Settings: The settings instance
    """
    return Settings()
