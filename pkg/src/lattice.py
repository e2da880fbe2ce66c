"""
Integral-affine plane arithmetic
Lattice vectors, exact rational points and GL(2,Z) maps; no floating point
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Tuple, Union

from src.errors import BlowdownError

Rational = Union[int, Fraction]


def rational_str(value: Rational) -> str:
    """Exact "p/q" text; integers keep the "/1" so readers never guess."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: Union[str, int]) -> Fraction:
    if isinstance(text, bool):
        raise BlowdownError("BadDescriptor", f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or "." in text or "e" in text.lower():
        raise BlowdownError("BadDescriptor", f"not an exact rational: {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise BlowdownError("BadDescriptor", f"not an exact rational: {text!r}")


@dataclass(frozen=True)
class IntVec:
    x: int
    y: int

    def __add__(self, other: "IntVec") -> "IntVec":
        return IntVec(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "IntVec") -> "IntVec":
        return IntVec(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "IntVec":
        return IntVec(-self.x, -self.y)

    def scaled(self, k: int) -> "IntVec":
        return IntVec(k * self.x, k * self.y)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_primitive(self) -> bool:
        return gcd(self.x, self.y) == 1

    def as_point(self) -> "PlanePoint":
        return PlanePoint(Fraction(self.x), Fraction(self.y))

    def to_list(self) -> list:
        return [self.x, self.y]


@dataclass(frozen=True)
class PlanePoint:
    """Euclidean base coordinates (p1, p2), stored as reduced fractions."""

    p1: Fraction
    p2: Fraction

    def __post_init__(self):
        # Fraction already reduces and keeps the denominator positive
        object.__setattr__(self, "p1", Fraction(self.p1))
        object.__setattr__(self, "p2", Fraction(self.p2))

    def __add__(self, other: "PlanePoint") -> "PlanePoint":
        return PlanePoint(self.p1 + other.p1, self.p2 + other.p2)

    def __sub__(self, other: "PlanePoint") -> "PlanePoint":
        return PlanePoint(self.p1 - other.p1, self.p2 - other.p2)

    def __neg__(self) -> "PlanePoint":
        return PlanePoint(-self.p1, -self.p2)

    def scaled(self, k: Rational) -> "PlanePoint":
        return PlanePoint(k * self.p1, k * self.p2)

    def cross(self, other: "PlanePoint") -> Fraction:
        return self.p1 * other.p2 - self.p2 * other.p1

    def is_origin(self) -> bool:
        return self.p1 == 0 and self.p2 == 0

    def to_list(self) -> list:
        return [rational_str(self.p1), rational_str(self.p2)]

    @classmethod
    def of(cls, p1: Rational, p2: Rational) -> "PlanePoint":
        return cls(Fraction(p1), Fraction(p2))


ORIGIN = PlanePoint.of(0, 0)


def as_point(v: Union[IntVec, PlanePoint]) -> PlanePoint:
    return v.as_point() if isinstance(v, IntVec) else v


def cross(u: IntVec, v: IntVec) -> int:
    """u x v = u.x*v.y - u.y*v.x, the planar cross product."""
    return u.x * v.y - u.y * v.x


def primitive_of(v: IntVec) -> Tuple[IntVec, int]:
    if v.is_zero():
        raise BlowdownError("ZeroVector", "the zero vector has no direction")
    g = gcd(v.x, v.y)
    return IntVec(v.x // g, v.y // g), g


def direction_of(a: PlanePoint, b: PlanePoint) -> Tuple[IntVec, Fraction]:
    """Primitive integral direction u and affine length alpha with b - a = alpha*u."""
    d = b - a
    if d.is_origin():
        raise BlowdownError("DegenerateSegment", f"{a.to_list()} coincides with {b.to_list()}")
    scale = lcm(d.p1.denominator, d.p2.denominator)
    u, g = primitive_of(IntVec(int(d.p1 * scale), int(d.p2 * scale)))
    return u, Fraction(g, scale)


def affine_length(a: PlanePoint, b: PlanePoint) -> Fraction:
    return direction_of(a, b)[1]


@dataclass(frozen=True)
class UniMat:
    """Integer 2x2 matrix [[a, b], [c, d]] with determinant +1 or -1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c not in (1, -1):
            raise BlowdownError("NotUnimodular", f"det of {self.rows()} is not +-1")

    @classmethod
    def identity(cls) -> "UniMat":
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def rows(self) -> list:
        return [[self.a, self.b], [self.c, self.d]]

    def apply(self, v: IntVec) -> IntVec:
        return IntVec(self.a * v.x + self.b * v.y, self.c * v.x + self.d * v.y)

    def apply_point(self, p: PlanePoint) -> PlanePoint:
        return PlanePoint(self.a * p.p1 + self.b * p.p2, self.c * p.p1 + self.d * p.p2)

    def compose(self, other: "UniMat") -> "UniMat":
        """self @ other (other acts first)."""
        return UniMat(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    __matmul__ = compose

    def inverse(self) -> "UniMat":
        s = self.det
        return UniMat(s * self.d, -s * self.b, -s * self.c, s * self.a)

    def transpose(self) -> "UniMat":
        return UniMat(self.a, self.c, self.b, self.d)

    def power(self, k: int) -> "UniMat":
        base = self if k >= 0 else self.inverse()
        result = UniMat.identity()
        for _ in range(abs(k)):
            result = base @ result
        return result


def unimat_from_columns(c1: IntVec, c2: IntVec) -> UniMat:
    return UniMat(c1.x, c2.x, c1.y, c2.y)


def apply_affine(A: UniMat, b: Tuple[Rational, Rational], p: PlanePoint) -> PlanePoint:
    return A.apply_point(p) + PlanePoint.of(*b)


@dataclass(frozen=True)
class AffineMap:
    """p -> A p + shift, an element of GL(2,Z) x Q^2."""

    matrix: UniMat
    shift: PlanePoint = ORIGIN

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(UniMat.identity(), ORIGIN)

    @classmethod
    def translation(cls, shift: PlanePoint) -> "AffineMap":
        return cls(UniMat.identity(), shift)

    def apply(self, p: PlanePoint) -> PlanePoint:
        return self.matrix.apply_point(p) + self.shift

    def apply_vec(self, v: IntVec) -> IntVec:
        return self.matrix.apply(v)

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other."""
        return AffineMap(self.matrix @ other.matrix, self.apply(other.shift))

    def inverse(self) -> "AffineMap":
        inv = self.matrix.inverse()
        return AffineMap(inv, -inv.apply_point(self.shift))

    def to_dict(self) -> dict:
        return {"matrix": self.matrix.rows(), "shift": self.shift.to_list()}
