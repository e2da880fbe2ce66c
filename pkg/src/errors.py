"""
Blowdown toolkit errors
Every failure carries a machine-readable code the CLI can print as JSON
"""

from typing import Dict


class BlowdownError(ValueError):
    """Base error with a stable code, e.g. "NotCoprime"."""

    exit_code = 2

    def __init__(self, code: str, detail: str = ""):
        self.code = code
        self.detail = detail
        super().__init__(f"{code}: {detail}" if detail else code)

    def to_dict(self) -> Dict[str, str]:
        return {"error": self.code, "detail": self.detail}


class InfeasibleSurgery(BlowdownError):
    """The input is well formed but the surgery does not exist here."""

    exit_code = 3


class ConfigError(BlowdownError):
    def __init__(self, detail: str):
        super().__init__("BadConfig", detail)
