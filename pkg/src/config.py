"""
Configuration
Environment-backed defaults for completion caps, oracle bounds and logging.
"""

import logging
import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


class Settings(BaseModel):
    """Process-wide defaults, overridable through QGB_* environment variables."""
    max_iterations: int = Field(default=20, gt=0)
    max_path_length: int = Field(default=64, gt=0)
    max_division_steps: int = Field(default=10_000, gt=0)
    oracle_path_cap: int = Field(default=20_000, gt=0)
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        values = {}
        env_names = {
            'max_iterations': 'QGB_MAX_ITERATIONS',
            'max_path_length': 'QGB_MAX_PATH_LENGTH',
            'max_division_steps': 'QGB_MAX_DIVISION_STEPS',
            'oracle_path_cap': 'QGB_ORACLE_PATH_CAP',
            'log_level': 'QGB_LOG_LEVEL',
        }
        for field_name, env_name in env_names.items():
            raw = os.getenv(env_name)
            if raw is not None and raw.strip():
                values[field_name] = raw.strip()
        return cls(**values)


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def setup_logging(level: Optional[str] = None) -> None:
    """Configure root logging for runner scripts; library modules only get loggers."""
    name = (level or get_settings().log_level).upper()
    logging.basicConfig(level=getattr(logging, name, logging.WARNING), format=LOG_FORMAT, force=True)
