import os
from functools import lru_cache

from h2cruise.core.utils import Environs

Environs(env_name=".env")


class BaseConfig:
    """Base configuration."""

    # Output
    OUTPUT_DIR: str = os.environ.get("H2CRUISE_OUTPUT", "output")

    # Cost-index sweep process pool, where 1 runs the points in-process
    SWEEP_MAX_WORKERS: int = int(
        os.environ.get("H2CRUISE_WORKERS") or min(4, os.cpu_count() or 1)
    )


class DevConfig(BaseConfig):
    """Development environment configuration."""


class PrdConfig(BaseConfig):
    """Production environment configuration."""


class TestingConfig(BaseConfig):
    """Test environment configuration."""

    SWEEP_MAX_WORKERS: int = 1


@lru_cache
def get_settings():
    """Return settings object that match with application environment."""
    config_cls_dict: dict = {
        "development": DevConfig,
        "production": PrdConfig,
        "testing": TestingConfig,
    }
    config_name = os.environ.get("APP_ENV", "development")
    config_cls = config_cls_dict.get(config_name, DevConfig)
    return config_cls()


settings: BaseConfig = get_settings()
