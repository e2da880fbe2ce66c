"""
Toolkit configuration
Read from the environment (and an optional .env file) once per process
"""

import logging
import os
from dataclasses import dataclass
from fractions import Fraction

from dotenv import load_dotenv

from src.errors import ConfigError

load_dotenv()

# --- Config ---
SCHEMA_VERSION = "1"
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


@dataclass(frozen=True)
class Settings:
    log_level: str
    sweep_workers: int
    svg_size: int
    svg_margin: Fraction
    default_area: Fraction
    schema_version: str = SCHEMA_VERSION


def _int_env(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name, str(default))
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name}={raw!r} is not an integer")
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value


def _fraction_env(name: str, default: str) -> Fraction:
    raw = os.getenv(name, default)
    try:
        value = Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{name}={raw!r} is not an exact rational")
    if value <= 0:
        raise ConfigError(f"{name} must be positive, got {raw}")
    return value


def load_settings() -> Settings:
    level = os.getenv("BLOWDOWN_LOG_LEVEL", "WARNING").upper()
    # logging.getLevelNamesMapping() is 3.11+; it returns a copy of _nameToLevel.
    names = getattr(logging, "getLevelNamesMapping", lambda: dict(logging._nameToLevel))()
    if level not in names:
        raise ConfigError(f"unknown log level {level!r}")
    return Settings(
        log_level=level,
        sweep_workers=_int_env("BLOWDOWN_SWEEP_WORKERS", 1, 1),
        svg_size=_int_env("BLOWDOWN_SVG_SIZE", 480, 16),
        svg_margin=_fraction_env("BLOWDOWN_SVG_MARGIN", "1/20"),
        default_area=_fraction_env("BLOWDOWN_DEFAULT_AREA", "1"),
    )


def configure_logging(level: str) -> None:
    """Single stderr handler; stdout stays reserved for JSON."""
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(level)
