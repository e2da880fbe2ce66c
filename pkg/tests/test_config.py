from fractions import Fraction

import pytest

from src.config import load_settings
from src.errors import BlowdownError, ConfigError, InfeasibleSurgery


def test_defaults(monkeypatch):
    for name in ("BLOWDOWN_LOG_LEVEL", "BLOWDOWN_SWEEP_WORKERS", "BLOWDOWN_SVG_SIZE",
                 "BLOWDOWN_SVG_MARGIN", "BLOWDOWN_DEFAULT_AREA"):
        monkeypatch.delenv(name, raising=False)
    settings = load_settings()
    assert settings.log_level == "WARNING"
    assert settings.sweep_workers == 1
    assert settings.svg_margin == Fraction(1, 20)
    assert settings.default_area == 1
    assert settings.schema_version == "1"


def test_overrides(monkeypatch):
    monkeypatch.setenv("BLOWDOWN_LOG_LEVEL", "debug")
    monkeypatch.setenv("BLOWDOWN_DEFAULT_AREA", "3/2")
    monkeypatch.setenv("BLOWDOWN_SWEEP_WORKERS", "4")
    settings = load_settings()
    assert settings.log_level == "DEBUG"
    assert settings.default_area == Fraction(3, 2)
    assert settings.sweep_workers == 4


@pytest.mark.parametrize(
    "name, value",
    [
        ("BLOWDOWN_LOG_LEVEL", "chatty"),
        ("BLOWDOWN_SWEEP_WORKERS", "0"),
        ("BLOWDOWN_SVG_SIZE", "big"),
        ("BLOWDOWN_SVG_MARGIN", "-1/20"),
        ("BLOWDOWN_DEFAULT_AREA", "1/0"),
    ],
)
def test_bad_values(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigError) as exc:
        load_settings()
    assert exc.value.code == "BadConfig"


def test_error_payload_and_exit_codes():
    err = BlowdownError("NotCoprime", "gcd(4, 2) = 2")
    assert err.to_dict() == {"error": "NotCoprime", "detail": "gcd(4, 2) = 2"}
    assert err.exit_code == 2
    assert InfeasibleSurgery("NoChain").exit_code == 3
    assert isinstance(err, ValueError)
