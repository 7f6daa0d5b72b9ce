"""
Front-end configuration using pydantic-settings, and loguru setup.

Supports three environments: development, production, testing.
Numerical defaults are not kept here; they belong to graph_entropy's
config.yml and are only overridden per invocation through RunConfig.
"""

import logging
import sys
from functools import lru_cache
from types import FrameType
from typing import cast

from loguru import logger
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # General
    PROJECT_NAME: str = "graph-entropy"
    ENVIRONMENT: str = "development"  # development | production | testing
    DEBUG: bool = False

    # Logging
    LOGGING_LEVEL: str = "INFO"

    # Output
    SCHEMA_VERSION: str = "1.0"
    OUTPUT_FORMAT: str = "human"  # human | structured

    @property
    def is_production(self) -> bool:
        return self.ENVIRONMENT == "production"

    @property
    def is_testing(self) -> bool:
        return self.ENVIRONMENT == "testing"

    @property
    def log_level(self) -> str:
        return "DEBUG" if self.DEBUG else self.LOGGING_LEVEL


class DevelopmentSettings(Settings):
    """Development defaults."""

    ENVIRONMENT: str = "development"
    DEBUG: bool = True


class ProductionSettings(Settings):
    """Production: quiet logs, scripts read structured output."""

    ENVIRONMENT: str = "production"
    DEBUG: bool = False
    LOGGING_LEVEL: str = "WARNING"


class TestingSettings(Settings):
    """Testing: only warnings reach stderr."""

    ENVIRONMENT: str = "testing"
    DEBUG: bool = False
    LOGGING_LEVEL: str = "WARNING"


_SETTINGS_MAP: dict[str, type[Settings]] = {
    "development": DevelopmentSettings,
    "production": ProductionSettings,
    "testing": TestingSettings,
}


@lru_cache
def get_settings(env: str = "development") -> Settings:
    """Return a cached Settings instance for the given environment."""
    settings_class = _SETTINGS_MAP.get(env, DevelopmentSettings)
    return settings_class()


# See: https://loguru.readthedocs.io/en/stable/overview.html#entirely-compatible-with-standard-logging
class InterceptHandler(logging.Handler):
    def emit(self, record: logging.LogRecord) -> None:  # pragma: no cover
        try:
            level = logger.level(record.levelname).name
        except ValueError:
            level = str(record.levelno)

        # Find caller from where originated the logged message
        frame, depth = logging.currentframe(), 2
        while frame.f_code.co_filename == logging.__file__:
            frame = cast(FrameType, frame.f_back)
            depth += 1

        logger.opt(depth=depth, exception=record.exc_info).log(level, record.getMessage())


def setup_app_logging(settings: Settings) -> None:
    """Send stdlib and graph_entropy records to stderr through loguru."""
    logging.getLogger().handlers = [InterceptHandler()]
    logging.getLogger("py.warnings").handlers = [InterceptHandler()]
    logging.captureWarnings(True)

    logger.configure(handlers=[{"sink": sys.stderr, "level": settings.log_level}])
    logger.enable("graph_entropy")
