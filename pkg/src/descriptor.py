"""
Descriptor files
JSON on disk <-> ManifoldDescriptor, rationals kept as exact "p/q" strings
"""

import json
from pathlib import Path
from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from src.config import SCHEMA_VERSION
from src.errors import BlowdownError
from src.lattice import parse_rational, rational_str
from src.plumbing import SphereChain
from src.surgery import ManifoldDescriptor


class ChainEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    coeffs: List[int] = Field(min_length=1)
    areas: Optional[List[str]] = None

    @field_validator("areas")
    @classmethod
    def exact_areas(cls, v):
        if v is not None:
            for a in v:
                parse_rational(a)
        return v


class DescriptorFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    schema_: Literal["1"] = Field(default=SCHEMA_VERSION, alias="schema")
    name: str
    euler: int
    signature: int
    b2: int = Field(ge=0)
    b1: int = Field(default=0, ge=0)
    pi1: str = "1"
    chains: List[ChainEntry] = []
    volume: Optional[str] = None

    @field_validator("volume")
    @classmethod
    def exact_volume(cls, v):
        if v is not None:
            parse_rational(v)
        return v

    def to_descriptor(self) -> ManifoldDescriptor:
        chains = tuple(
            SphereChain(
                tuple(c.coeffs),
                None if c.areas is None else tuple(parse_rational(a) for a in c.areas),
            )
            for c in self.chains
        )
        return ManifoldDescriptor(
            name=self.name,
            euler=self.euler,
            signature=self.signature,
            b2=self.b2,
            b1=self.b1,
            pi1_label=self.pi1,
            chains=chains,
            symplectic_volume=None if self.volume is None else parse_rational(self.volume),
        )

    @classmethod
    def from_descriptor(cls, descr: ManifoldDescriptor) -> "DescriptorFile":
        return cls(
            schema=SCHEMA_VERSION,
            name=descr.name,
            euler=descr.euler,
            signature=descr.signature,
            b2=descr.b2,
            b1=descr.b1,
            pi1=descr.pi1_label,
            chains=[
                ChainEntry(
                    coeffs=list(c.coeffs),
                    areas=None if c.areas is None else [rational_str(a) for a in c.areas],
                )
                for c in descr.chains
            ],
            volume=None if descr.symplectic_volume is None else rational_str(descr.symplectic_volume),
        )


def parse_descriptor(text: str) -> ManifoldDescriptor:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise BlowdownError("BadDescriptor", f"invalid JSON: {e}") from e
    try:
        return DescriptorFile.model_validate(data).to_descriptor()
    except ValidationError as e:
        raise BlowdownError("BadDescriptor", str(e).splitlines()[0]) from e


def dumps_descriptor(descr: ManifoldDescriptor) -> str:
    model = DescriptorFile.from_descriptor(descr)
    return json.dumps(model.model_dump(by_alias=True, exclude_none=True), indent=2) + "\n"


def load_descriptor(path: Union[str, Path]) -> ManifoldDescriptor:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise BlowdownError("BadDescriptor", f"cannot read {path}: {e.strerror}") from e
    return parse_descriptor(text)


def save_descriptor(descr: ManifoldDescriptor, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(dumps_descriptor(descr), encoding="utf-8")
    return path
