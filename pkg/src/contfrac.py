"""
Negative (Hirzebruch-Jung) continued fractions
y/x = b1 - 1/(b2 - 1/(... - 1/bk)), normalized so every bj >= 2
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Tuple

from src.errors import BlowdownError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NegContFrac:
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise BlowdownError("OutOfRange", "a continued fraction needs at least one coefficient")

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def k(self) -> int:
        return len(self.coeffs)

    def value(self) -> Fraction:
        y, x = evaluate(self)
        return Fraction(y, x)

    def reversed(self) -> "NegContFrac":
        return NegContFrac(tuple(reversed(self.coeffs)))

    def to_dict(self) -> dict:
        y, x = evaluate(self)
        return {"coeffs": list(self.coeffs), "value": f"{y}/{x}", "k": self.k}


def expand(y: int, x: int) -> NegContFrac:
    if x < 1 or y <= x:
        raise BlowdownError("OutOfRange", f"need y > x >= 1, got y={y}, x={x}")
    if gcd(y, x) != 1:
        raise BlowdownError("NotCoprime", f"gcd({y}, {x}) = {gcd(y, x)}")
    coeffs: List[int] = []
    while x != 0:
        b = -(-y // x)  # ceil(y/x)
        coeffs.append(b)
        y, x = x, b * x - y
    return NegContFrac(tuple(coeffs))


def evaluate(cf: NegContFrac) -> Tuple[int, int]:
    """Fold right to left; returns the reduced pair (y, x) with x > 0."""
    y, x = cf.coeffs[-1], 1
    for b in reversed(cf.coeffs[:-1]):
        if y == 0:
            raise BlowdownError("SingularExpansion", f"zero denominator while folding {list(cf.coeffs)}")
        # b - x/y
        y, x = b * y - x, y
    if x < 0:
        y, x = -y, -x
    g = gcd(y, x)
    return y // g, x // g


def canonical_m(n: int, m: int) -> int:
    if n < 2:
        raise BlowdownError("OutOfRange", f"need n >= 2, got n={n}")
    if m < 1:
        raise BlowdownError("OutOfRange", f"need m >= 1, got m={m}")
    if gcd(n, m) != 1:
        raise BlowdownError("NotCoprime", f"gcd({n}, {m}) = {gcd(n, m)}")
    if m >= n:
        logger.warning("m=%d >= n=%d, using the residue %d (same lens space)", m, n, m % n)
    return m % n if m >= n else m


def chain_coeffs(n: int, m: int) -> NegContFrac:
    m = canonical_m(n, m)
    return expand(n * n, n * m - 1)


def classical_chain(n: int) -> NegContFrac:
    """The m = 1 chain [n+2, 2, ..., 2] bounding L(n^2, n-1)."""
    if n < 2:
        raise BlowdownError("OutOfRange", f"need n >= 2, got n={n}")
    if n == 2:
        return NegContFrac((4,))
    return NegContFrac((n + 2,) + (2,) * (n - 2))


def dual_chain(cf: NegContFrac) -> NegContFrac:
    return cf.reversed()
