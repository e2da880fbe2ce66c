"""
Rational blowdown on manifold descriptors
Chain matching, fit verification, invariant deltas and volume bookkeeping
"""

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd, isqrt
from typing import List, Optional, Sequence, Tuple

from src.affine_base import region_area, transform_by
from src.contfrac import canonical_m, chain_coeffs, evaluate
from src.errors import BlowdownError, InfeasibleSurgery
from src.lattice import AffineMap, PlanePoint, Rational, rational_str
from src.lens import LensSpace, equivalent
from src.models import (
    build_ball_base,
    build_chain_polygon,
    collar_region,
    default_collar,
    fit_max_t,
    lens_of_cone,
    orient_corner_arc,
)
from src.plumbing import SphereChain, boundary_lens, euler_characteristic, signature

logger = logging.getLogger(__name__)

PI1_NOTE = "not computable from descriptor — rational ball has π₁ = Z_{n}"


@dataclass(frozen=True)
class ManifoldDescriptor:
    name: str
    euler: int
    signature: int
    b2: int
    b1: int = 0
    pi1_label: str = "1"
    chains: Tuple[SphereChain, ...] = ()
    symplectic_volume: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "chains", tuple(self.chains))
        if self.b2 < 0 or self.b1 < 0:
            raise BlowdownError("BadDescriptor", f"{self.name}: Betti numbers must be >= 0")
        if self.symplectic_volume is not None:
            object.__setattr__(self, "symplectic_volume", Fraction(self.symplectic_volume))

    @property
    def chain_total(self) -> int:
        return sum(c.k for c in self.chains)

    @property
    def parity_ok(self) -> bool:
        return (self.euler + self.signature) % 2 == 0

    def warnings(self) -> List[str]:
        found = []
        if not self.parity_ok:
            found.append(f"e + sigma = {self.euler + self.signature} is odd")
        if self.b2 < self.chain_total:
            found.append(f"b2 = {self.b2} is smaller than the {self.chain_total} embedded spheres")
        return found

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "euler": self.euler,
            "signature": self.signature,
            "b2": self.b2,
            "b1": self.b1,
            "pi1": self.pi1_label,
            "chains": [c.to_dict() for c in self.chains],
            "volume": None if self.symplectic_volume is None else rational_str(self.symplectic_volume),
        }


@dataclass(frozen=True)
class ChainMatch:
    index: int
    reversed: bool = False

    def to_dict(self) -> dict:
        return {"index": self.index, "reversed": self.reversed}


@dataclass(frozen=True)
class BlowdownReport:
    before: ManifoldDescriptor
    after: ManifoldDescriptor
    n: int
    m: int
    k: int
    chain_index: int
    reversed: bool
    boundary: LensSpace
    t_max: Fraction
    t: Fraction
    area_W: Fraction
    area_U: Fraction
    warnings: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def pi1_note(self) -> str:
        return PI1_NOTE.format(n=self.n)

    @property
    def volume_delta(self) -> Fraction:
        return self.area_U - self.area_W

    @property
    def deltas(self) -> dict:
        return {
            "euler": self.after.euler - self.before.euler,
            "signature": self.after.signature - self.before.signature,
            "b2": self.after.b2 - self.before.b2,
        }

    def to_dict(self) -> dict:
        return {
            "before": self.before.to_dict(),
            "after": self.after.to_dict(),
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "chain": ChainMatch(self.chain_index, self.reversed).to_dict(),
            "boundary": self.boundary.to_dict(),
            "t_max": rational_str(self.t_max),
            "t": rational_str(self.t),
            "area_W": rational_str(self.area_W),
            "area_U": rational_str(self.area_U),
            "volume_delta": rational_str(self.volume_delta),
            "deltas": self.deltas,
            "pi1_note": self.pi1_note,
            "warnings": list(self.warnings),
        }


def find_chain(descr: ManifoldDescriptor, n: int, m: int) -> List[int]:
    """Indices of chains equal to chain_coeffs(n, m), read forwards."""
    return [match.index for match in find_matches(descr, n, m) if not match.reversed]


def find_matches(descr: ManifoldDescriptor, n: int, m: int) -> List[ChainMatch]:
    target = chain_coeffs(n, m).coeffs
    matches = []
    for i, chain in enumerate(descr.chains):
        if chain.coeffs == target:
            matches.append(ChainMatch(i))
        elif tuple(reversed(chain.coeffs)) == target:
            logger.warning("chain %d of %s matches C_{%d,%d} only when reversed", i, descr.name, n, m)
            matches.append(ChainMatch(i, reversed=True))
    return matches


def infer_parameters(coeffs: Sequence[int]) -> Tuple[int, int]:
    """Recover (n, m) from a chain whose value is n^2 / (nm - 1)."""
    p, q = evaluate(SphereChain(tuple(coeffs)).contfrac())
    n = isqrt(p)
    if n < 2 or n * n != p or (q + 1) % n:
        raise InfeasibleSurgery("NoChain", f"{list(coeffs)} evaluates to {p}/{q}, not n^2/(nm-1)")
    m = (q + 1) // n
    if not 1 <= m < n or gcd(n, m) != 1:
        raise InfeasibleSurgery("NoChain", f"{list(coeffs)} gives (n, m) = ({n}, {m})")
    return n, m


def _select_chain(descr, chain_index, n, m, allow_reversed):
    if not 0 <= chain_index < len(descr.chains):
        raise InfeasibleSurgery("NoChain", f"{descr.name} has no chain {chain_index}")
    chain = descr.chains[chain_index]
    if (n is None) != (m is None):
        raise BlowdownError("OutOfRange", f"give both n and m or neither, got n={n}, m={m}")
    if n is None:
        n, m = infer_parameters(chain.coeffs)
        return chain, n, m, False
    match = next((x for x in find_matches(descr, n, m) if x.index == chain_index), None)
    if match is None:
        raise InfeasibleSurgery("NoChain", f"chain {chain_index} {list(chain.coeffs)} is not C_{{{n},{m}}}")
    if match.reversed:
        if not allow_reversed:
            raise InfeasibleSurgery("NoChain", f"chain {chain_index} matches only reversed; confirm with allow_reversed")
        chain = chain.reversed()
    return chain, n, m % n, match.reversed


def blowdown(
    descr: ManifoldDescriptor,
    chain_index: int,
    collar: Optional[Sequence[PlanePoint]] = None,
    n: Optional[int] = None,
    m: Optional[int] = None,
    t: Optional[Rational] = None,
    frame: Optional[AffineMap] = None,
    allow_reversed: bool = False,
) -> BlowdownReport:
    """
    Replace the neighbourhood of chain `chain_index` by the rational ball B_{n,m}.

    The collar is given in the chart `frame` (the standard chain chart when
    omitted); without a collar the default chord at parameter 1 is used.
    """
    chain, n, m, was_reversed = _select_chain(descr, chain_index, n, m, allow_reversed)
    if chain.areas is None:
        raise BlowdownError("NoAreas", f"chain {chain_index} of {descr.name} has no sphere areas")
    frame = frame or AffineMap.identity()
    polygon = build_chain_polygon(chain)
    X = transform_by(polygon.X, frame)
    if collar is None:
        collar = [frame.apply(p) for p in default_collar(polygon)]
    region = collar_region(X, collar)

    to_corner = polygon.corner_chart().compose(frame.inverse())
    inner = [polygon.corner_chart().apply(x) for x in polygon.points]
    gamma = orient_corner_arc([to_corner.apply(p) for p in region.gamma])
    t_max = fit_max_t(inner, n, m)
    if t_max <= 0:
        raise InfeasibleSurgery("DoesNotFit", f"no rational ball B_{{{n},{m}}} fits inside the collar")
    t = t_max / 2 if t is None else Fraction(t)
    if not 0 < t < t_max:
        raise BlowdownError("NodeOutside", f"need 0 < t < {t_max}, got {t}")
    ball = build_ball_base(n, m, t, collar=gamma)

    boundary = boundary_lens(chain)
    assert equivalent(boundary, lens_of_cone(ball.ambient)), "chain boundary and corner lens disagree"
    k = chain.k
    # e(B) = 1, sigma(B) = 0 and the gluing is along a rational homology sphere
    d_euler = 1 - euler_characteristic(chain)
    d_sigma = -signature(chain)
    area_W, area_U = region_area(region.W), region_area(ball.region)
    if descr.b2 - k < 0:
        raise BlowdownError("InconsistentDescriptor", f"{descr.name}: b2 = {descr.b2} < k = {k}")
    volume = descr.symplectic_volume
    after = replace(
        descr,
        name=f"{descr.name}#B{n},{m}",
        euler=descr.euler + d_euler,
        signature=descr.signature + d_sigma,
        b2=descr.b2 - k,
        pi1_label="unknown",
        chains=descr.chains[:chain_index] + descr.chains[chain_index + 1:],
        symplectic_volume=None if volume is None else volume + area_U - area_W,
    )
    warnings = tuple(descr.warnings())
    for w in warnings:
        logger.warning("%s: %s", descr.name, w)
    logger.debug("blowdown of %s along chain %d: t_max=%s", descr.name, chain_index, t_max)
    return BlowdownReport(
        descr, after, n, m, k, chain_index, was_reversed, boundary, t_max, t, area_W, area_U, warnings=warnings
    )


def volume_of_ball_piece(n: int, m: int, gamma: Sequence[PlanePoint]) -> Fraction:
    """
    Base area of the corner-side region of V_{n^2, nm-1} cut off by gamma.

    The node position does not enter: the area is recomputed for three
    values of t and they must agree.
    """
    m = canonical_m(n, m)
    gamma = orient_corner_arc(gamma)
    t_star = fit_max_t(gamma, n, m)
    if t_star <= 0:
        raise BlowdownError("BadCollar", "the arc does not separate the corner from infinity")
    areas = {region_area(build_ball_base(n, m, t_star / d, collar=gamma).region) for d in (2, 3, 4)}
    assert len(areas) == 1, f"ball area depends on t: {sorted(areas)}"
    return areas.pop()
