"""
Lens spaces L(p, q)
Normalized values, construction from two collapsing torus cycles, classification
"""

from dataclasses import dataclass
from math import gcd

from sympy.core.intfunc import igcdex

from src.errors import BlowdownError
from src.lattice import IntVec, cross


@dataclass(frozen=True)
class LensSpace:
    """L(p, q) with 0 <= q < p and gcd(p, q) = 1; L(1, 0) is the 3-sphere."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or not 0 <= self.q < max(self.p, 1) or gcd(self.p, self.q) != 1:
            raise BlowdownError("NotALensSpace", f"L({self.p},{self.q}) is not normalized")

    @classmethod
    def normalized(cls, p: int, q: int) -> "LensSpace":
        p = abs(p)
        if p == 0:
            raise BlowdownError("NotALensSpace", "p = 0 gives S^1 x S^2")
        return cls(p, q % p)

    @property
    def is_sphere(self) -> bool:
        return self.p == 1

    def mirror(self) -> "LensSpace":
        return LensSpace.normalized(self.p, -self.q)

    def label(self) -> str:
        return "S^3" if self.is_sphere else f"L({self.p},{self.q})"

    def to_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "label": self.label()}


def from_gluing(mu1: IntVec, mu2: IntVec) -> LensSpace:
    """
    Glue two solid tori whose meridians are mu1 and mu2 in one torus basis.

    The torus orientation is the one induced by the base, so the order of
    the meridians matters; their signs do not (a collapsing cycle is
    unoriented).
    """
    if not (mu1.is_primitive() and mu2.is_primitive()):
        raise BlowdownError("NotPrimitive", f"meridians {mu1.to_list()}, {mu2.to_list()} must be primitive")
    c = cross(mu1, mu2)
    if c == 0:
        raise BlowdownError("NotALensSpace", "parallel meridians glue to S^1 x S^2")
    if c < 0:
        mu2, c = -mu2, -c
    # complete mu1 to a basis (mu1, lam) with cross(mu1, lam) = 1
    s, t, _ = igcdex(mu1.x, mu1.y)
    lam = IntVec(-int(t), int(s))
    assert cross(mu1, lam) == 1
    # mu2 = a*mu1 + c*lam, i.e. -q*mu1 + p*lam in the usual notation
    a = cross(mu2, lam)
    return LensSpace.normalized(c, -a)


def equivalent(a: LensSpace, b: LensSpace, oriented: bool = True) -> bool:
    if a.p != b.p:
        return False
    p = a.p
    if (b.q - a.q) % p == 0 or (a.q * b.q - 1) % p == 0:
        return True
    if oriented:
        return False
    return (b.q + a.q) % p == 0 or (a.q * b.q + 1) % p == 0
