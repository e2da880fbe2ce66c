import random
from fractions import Fraction
from pathlib import Path

import pytest

from src.plumbing import SphereChain
from src.surgery import ManifoldDescriptor

DESCRIPTOR_DIR = Path(__file__).parent / "data" / "descriptors"


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def e1():
    """Elliptic-surface-style record carrying one -4 sphere of area 1."""
    return ManifoldDescriptor(
        name="E(1)",
        euler=12,
        signature=-8,
        b2=10,
        chains=(SphereChain((4,), (Fraction(1),)),),
        symplectic_volume=Fraction(12),
    )


@pytest.fixture
def chain25():
    return ManifoldDescriptor(
        name="CP2#6-CP2",
        euler=9,
        signature=-5,
        b2=7,
        chains=(SphereChain((2, 5), (Fraction(1), Fraction(1))),),
    )


@pytest.fixture
def descriptor_files():
    files = sorted(DESCRIPTOR_DIR.glob("*.json"))
    assert len(files) == 10
    return files
