import os
from dataclasses import dataclass

from dotenv import load_dotenv, find_dotenv

from cjones.errors import ConfigError

# Load environment variables
load_dotenv(find_dotenv())

MIN_DIGITS = 16
DEFAULT_DIGITS = 64
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


@dataclass(frozen=True)
class Settings:
    digits: int = DEFAULT_DIGITS
    jobs: int = 1
    log_level: str = "WARNING"


def _int_env(name: str, default: str) -> int:
    raw = os.getenv(name, default)
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None


def load_settings() -> Settings:
    """Read CJONES_* variables from the environment (and .env, if present)."""
    digits = _int_env("CJONES_DIGITS", str(DEFAULT_DIGITS))
    if digits < MIN_DIGITS:
        raise ConfigError(f"CJONES_DIGITS must be at least {MIN_DIGITS}, got {digits}")

    jobs = _int_env("CJONES_JOBS", str(os.cpu_count() or 1))
    if jobs < 1:
        raise ConfigError(f"CJONES_JOBS must be positive, got {jobs}")

    log_level = os.getenv("CJONES_LOG_LEVEL", "WARNING").upper()
    return Settings(digits=digits, jobs=jobs, log_level=log_level)
