"""
Model base diagrams
The cone V_{n,m}, the sphere-chain polygon X with its collar W, the nodal
bases P_n and the rational-ball base U_{n,m}, plus monodromy bookkeeping
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from src.affine_base import (
    BaseDiagram,
    StratumKind,
    VertexReading,
    contains,
    corner_apex,
    on_ray,
    on_segment,
    radially_transverse,
    read_vertex,
    segments_intersect,
)
from src.contfrac import canonical_m
from src.errors import BlowdownError
from src.lattice import (
    ORIGIN,
    AffineMap,
    IntVec,
    PlanePoint,
    Rational,
    UniMat,
    cross,
    rational_str,
)
from src.lens import LensSpace, from_gluing
from src.plumbing import SphereChain

logger = logging.getLogger(__name__)

CL = StratumKind.CIRCLE_LOCUS
TC = StratumKind.TORUS_CUT
EX = StratumKind.EXCISED


def _require_primitive(v: IntVec) -> None:
    if v.is_zero() or not v.is_primitive():
        raise BlowdownError("NotPrimitive", f"{v.to_list()} is not a primitive vector")


def monodromy(eigen_dir: IntVec) -> UniMat:
    """[[1,1],[0,1]] conjugated so that its fixed line is eigen_dir = (n, m)."""
    _require_primitive(eigen_dir)
    n, m = eigen_dir.x, eigen_dir.y
    return UniMat(1 - n * m, n * n, -m * m, 1 + n * m)


def vanishing_cycle(eigen_dir: IntVec) -> IntVec:
    _require_primitive(eigen_dir)
    return IntVec(-eigen_dir.y, eigen_dir.x)


def collapse_cycle(edge_dir: IntVec) -> IntVec:
    """The torus cycle that collapses over an edge of direction (a, b)."""
    return IntVec(-edge_dir.y, edge_dir.x)


@dataclass(frozen=True)
class FocusFocusNode:
    position: PlanePoint
    eigen_dir: IntVec
    cut_start: PlanePoint

    def __post_init__(self):
        _require_primitive(self.eigen_dir)

    @property
    def cut(self) -> Tuple[PlanePoint, PlanePoint]:
        return self.cut_start, self.position

    def transformed(self, chart: AffineMap) -> "FocusFocusNode":
        return FocusFocusNode(chart.apply(self.position), chart.apply_vec(self.eigen_dir), chart.apply(self.cut_start))

    def to_dict(self) -> dict:
        return {
            "position": self.position.to_list(),
            "eigen_dir": self.eigen_dir.to_list(),
            "cut": [self.cut_start.to_list(), self.position.to_list()],
            "monodromy": monodromy(self.eigen_dir).rows(),
            "vanishing_cycle": vanishing_cycle(self.eigen_dir).to_list(),
        }


# --- Cone on a lens space ---

@dataclass(frozen=True)
class ConeBase:
    n: int
    m: int
    diagram: BaseDiagram

    @property
    def collapse_cycles(self) -> Tuple[IntVec, IntVec]:
        return collapse_cycle(self.diagram.ray_in), collapse_cycle(self.diagram.ray_out)

    def to_dict(self) -> dict:
        return {
            "model": "cone",
            "n": self.n,
            "m": self.m,
            "apex": ORIGIN.to_list(),
            "diagram": self.diagram.to_dict(),
            "collapse_cycles": [c.to_list() for c in self.collapse_cycles],
            "corner": read_cone_corner(self).to_dict(),
            "lens": lens_of_cone(self).to_dict(),
        }


def cone_base(n: int, m: int) -> ConeBase:
    if n < 1 or m < 0:
        raise BlowdownError("OutOfRange", f"need n >= 1, m >= 0, got ({n}, {m})")
    if gcd(n, m) != 1:
        raise BlowdownError("NotCoprime", f"gcd({n}, {m}) = {gcd(n, m)}")
    diagram = BaseDiagram((ORIGIN,), (CL, CL), ray_in=IntVec(0, 1), ray_out=IntVec(n, m))
    return ConeBase(n, m, diagram)


def read_cone_corner(cone: ConeBase) -> VertexReading:
    return read_vertex(cone.diagram.ray_in, cone.diagram.ray_out)


def lens_of_cone(cone: ConeBase) -> LensSpace:
    return from_gluing(*cone.collapse_cycles)


@dataclass(frozen=True)
class ConeSlice:
    height: Fraction
    split: PlanePoint
    p1_piece: Tuple[PlanePoint, Optional[PlanePoint]]
    p2_piece: Tuple[PlanePoint, Optional[PlanePoint]]
    meridians: Tuple[IntVec, IntVec]
    lens: LensSpace

    def to_dict(self) -> dict:
        def piece(seg):
            return [seg[0].to_list(), None if seg[1] is None else seg[1].to_list()]

        return {
            "height": rational_str(self.height),
            "split": self.split.to_list(),
            "P1": piece(self.p1_piece),
            "P2": piece(self.p2_piece),
            "meridians": [mu.to_list() for mu in self.meridians],
            "lens": self.lens.to_dict(),
        }


def cone_slice(cone: ConeBase, height: Rational, c: Rational) -> ConeSlice:
    """Split the level set {p2 = height} into the two solid-torus pieces."""
    height, c = Fraction(height), Fraction(c)
    if height <= 0:
        raise BlowdownError("OutOfRange", "the level height must be positive")
    if c <= 0 or (cone.m > 0 and c >= Fraction(cone.n, cone.m)):
        raise BlowdownError("OutOfRange", f"need 0 < c < n/m, got c={c}")
    start = PlanePoint(Fraction(0), height)
    split = PlanePoint(c * height, height)
    end = PlanePoint(height * cone.n / cone.m, height) if cone.m > 0 else None
    meridians = (IntVec(1, 0), IntVec(-cone.m, cone.n))
    return ConeSlice(height, split, (start, split), (split, end), meridians, from_gluing(*meridians))


# --- Neighbourhood of a chain of spheres ---

@dataclass(frozen=True)
class ChainPolygon:
    chain: SphereChain
    points: Tuple[PlanePoint, ...]
    u: Tuple[IntVec, ...]
    X: BaseDiagram

    @property
    def k(self) -> int:
        return self.chain.k

    @property
    def apex(self) -> PlanePoint:
        return corner_apex(self.X)

    def corner_chart(self) -> AffineMap:
        """X -> V_{p,q} coordinates: the corner apex goes to the origin."""
        return AffineMap.translation(-self.apex)

    def to_dict(self) -> dict:
        return {
            "model": "chain",
            "chain": self.chain.to_dict(),
            "points": [x.to_list() for x in self.points],
            "u": [v.to_list() for v in self.u],
            "apex": self.apex.to_list(),
            "diagram": self.X.to_dict(),
        }


def build_chain_polygon(chain: SphereChain) -> ChainPolygon:
    if chain.areas is None:
        raise BlowdownError("NoAreas", "the chain polygon needs sphere areas")
    u = [IntVec(0, -1), IntVec(1, 0)]
    for b in chain.coeffs:
        u.append(u[-1].scaled(b) - u[-2])
    for j in range(len(u) - 1):
        assert cross(u[j], u[j + 1]) == 1, f"u_{j} x u_{j + 1} != 1"
        assert u[j + 1].is_primitive(), f"u_{j + 1} is not primitive"
    for j, b in enumerate(chain.coeffs, start=1):
        assert cross(u[j + 1], u[j - 1]) == -b
    points = [ORIGIN]
    for j, alpha in enumerate(chain.areas, start=1):
        points.append(points[-1] + u[j].as_point().scaled(alpha))
    X = BaseDiagram(tuple(points), (CL,) * (chain.k + 2), ray_in=-u[0], ray_out=u[-1])
    logger.debug("chain %s closes with u_%d = %s", list(chain.coeffs), chain.k + 1, u[-1].to_list())
    return ChainPolygon(chain, tuple(points), tuple(u), X)


def default_collar(polygon: ChainPolygon, s: Rational = 1) -> List[PlanePoint]:
    """Chord between the two rays at affine parameter s."""
    X = polygon.X
    s = Fraction(s)
    return [X.vertices[0] + X.ray_in.as_point().scaled(s), X.vertices[-1] + X.ray_out.as_point().scaled(s)]


@dataclass(frozen=True)
class CollarRegion:
    W: BaseDiagram
    W_prime: BaseDiagram
    gamma: Tuple[PlanePoint, ...]
    inner_arc: Tuple[PlanePoint, ...]
    apex: PlanePoint

    def to_dict(self) -> dict:
        return {
            "W": self.W.to_dict(),
            "W_prime": self.W_prime.to_dict(),
            "gamma": [p.to_list() for p in self.gamma],
            "apex": self.apex.to_list(),
        }


def _strictly_inside_convex(diagram: BaseDiagram, p: PlanePoint) -> bool:
    for e in range(diagram.edge_count):
        edge = diagram.edge(e)
        d = diagram.edge_direction(e).as_point()
        if d.cross(p - edge.start) <= 0:
            return False
    return True


def collar_region(X: BaseDiagram, gamma: Sequence[PlanePoint]) -> CollarRegion:
    gamma = list(gamma)
    if len(gamma) < 2:
        raise BlowdownError("BadCollar", "a collar arc needs two points")
    first, last = X.vertices[0], X.vertices[-1]

    def starts_on_in(arc):
        return on_ray(arc[0], first, X.ray_in, strict=True) and on_ray(arc[-1], last, X.ray_out, strict=True)

    if not starts_on_in(gamma):
        gamma.reverse()
        if not starts_on_in(gamma):
            raise BlowdownError("BadCollar", "the collar must run from one boundary ray to the other")
    chain_edges = X.finite_edges()
    for i in range(len(gamma) - 1):
        for e in chain_edges:
            edge = X.edge(e)
            if segments_intersect(gamma[i], gamma[i + 1], edge.start, edge.end):
                raise BlowdownError("ArcTooClose", f"collar segment {i} meets edge {e}")
    for p in gamma[1:-1]:
        if not _strictly_inside_convex(X, p):
            raise BlowdownError("BadCollar", f"collar point {p.to_list()} leaves the region")
    apex = corner_apex(X)
    if not radially_transverse(gamma, apex):
        raise BlowdownError("NotTransverse", "the collar is not transverse to the radial field")
    inner = list(X.vertices)
    vertices = [gamma[0]] + inner + [gamma[-1]] + gamma[-2:0:-1]
    k = len(inner) - 1
    strata = [CL] + [CL] * k + [CL] + [TC] * (len(gamma) - 1)
    W = BaseDiagram(tuple(vertices), tuple(strata))
    prime_strata = [CL] + [EX] * k + [CL] + [TC] * (len(gamma) - 1)
    W_prime = BaseDiagram(tuple(vertices), tuple(prime_strata))
    return CollarRegion(W, W_prime, tuple(gamma), tuple(inner), apex)


# --- Nodal fibre ---

@dataclass(frozen=True)
class NodalBase:
    """The branch-cut plane P_n: sector S_n glued to S_0 by p -> A p."""

    n_wraps: int
    gluing: UniMat

    @property
    def fillable(self) -> bool:
        return self.n_wraps == 1

    @property
    def sectors(self) -> dict:
        # angles measured in full turns
        return {
            "S_n": (Fraction(self.n_wraps), self.n_wraps + Fraction(1, 4)),
            "S_0": (Fraction(0), Fraction(1, 8)),
        }

    def holonomy(self, loop: Sequence[PlanePoint]) -> UniMat:
        w = winding_number(loop)
        if w % self.n_wraps:
            raise BlowdownError("OpenLoop", f"winding {w} does not close up in P_{self.n_wraps}")
        return self.gluing.power(w // self.n_wraps)

    def to_dict(self) -> dict:
        return {
            "model": "nodal",
            "n_wraps": self.n_wraps,
            "fillable": self.fillable,
            "gluing": self.gluing.rows(),
            "eigenline": [1, 0],
            "vanishing_cycle": vanishing_cycle(IntVec(1, 0)).to_list(),
            "sectors": {k: [rational_str(a), rational_str(b)] for k, (a, b) in self.sectors.items()},
        }


def winding_number(loop: Sequence[PlanePoint]) -> int:
    """Signed crossings of the eigenline ray {(s, 0): s > 0} by a closed polyline."""
    w = 0
    n = len(loop)
    for i in range(n):
        a, b = loop[i], loop[(i + 1) % n]
        if a.is_origin() or on_segment(ORIGIN, a, b):
            raise BlowdownError("ArcHitsApex", "the loop passes through the node")
        if a.p2 <= 0 < b.p2 and (b - a).cross(ORIGIN - a) > 0:
            w += 1
        elif b.p2 <= 0 < a.p2 and (b - a).cross(ORIGIN - a) < 0:
            w -= 1
    return w


def nodal_base(n_wraps: int) -> NodalBase:
    if n_wraps < 1:
        raise BlowdownError("OutOfRange", f"need n_wraps >= 1, got {n_wraps}")
    if n_wraps > 1:
        logger.warning("P_%d has an overtwisted, non-fillable boundary", n_wraps)
    return NodalBase(n_wraps, monodromy(IntVec(1, 0)))


# --- Rational ball ---

@dataclass(frozen=True)
class BallHomology:
    h1_order: int
    invariant_factors: Tuple[int, ...]
    pi1_label: str
    b1: int = 0
    b2: int = 0

    def to_dict(self) -> dict:
        return {
            "h1_order": self.h1_order,
            "invariant_factors": list(self.invariant_factors),
            "pi1": self.pi1_label,
            "b1": self.b1,
            "b2": self.b2,
        }


def ball_homology(n: int, m: int) -> BallHomology:
    """Collapse (1,0) on one end of T^2 x [0,1] and (-m,n) on the other."""
    relations = Matrix([[1, 0], [-m, n]])
    snf = smith_normal_form(relations, domain=ZZ)
    factors = tuple(abs(int(snf[i, i])) for i in range(2))
    if 0 in factors:
        raise BlowdownError("NotARationalBall", f"relations {relations.tolist()} leave a free summand")
    order = factors[0] * factors[1]
    label = "1" if order == 1 else f"Z_{order}"
    return BallHomology(order, factors, label)


def _check_ball_collar(collar: Sequence[PlanePoint], P: int, Q: int) -> None:
    if len(collar) < 2:
        raise BlowdownError("BadCollar", "a collar arc needs two points")
    axis, edge = IntVec(0, 1), IntVec(P, Q)
    if not (on_ray(collar[0], ORIGIN, axis, strict=True) and on_ray(collar[-1], ORIGIN, edge, strict=True)):
        raise BlowdownError("BadCollar", f"the collar must join the rays {axis.to_list()} and {edge.to_list()}")
    for p in collar[1:-1]:
        if not (p.p1 > 0 and edge.as_point().cross(p) > 0):
            raise BlowdownError("BadCollar", f"collar point {p.to_list()} is outside the open corner")
    if not radially_transverse(collar, ORIGIN):
        raise BlowdownError("NotTransverse", "the collar is not transverse to the radial field")


def orient_corner_arc(arc: Sequence[PlanePoint]) -> List[PlanePoint]:
    """Order an arc of V_{p,q} so it starts on the vertical ray."""
    arc = list(arc)
    if arc and arc[0].p1 != 0 and arc[-1].p1 == 0:
        arc.reverse()
    return arc


def fit_max_t(arc: Sequence[PlanePoint], n: int, m: int) -> Fraction:
    """
    Largest t such that the segment (0,0)-(tn,tm) stays on the corner side
    of the arc: the first parameter where the ray through (n, m) meets it.
    """
    arc = list(arc)
    d = PlanePoint.of(n, m)
    for i in range(len(arc) - 1):
        if arc[i].is_origin() or on_segment(ORIGIN, arc[i], arc[i + 1]):
            raise BlowdownError("ArcHitsApex", f"arc segment {i} touches the corner")
    if arc[-1].is_origin():
        raise BlowdownError("ArcHitsApex", "the arc ends at the corner")
    best: Optional[Fraction] = None
    for i in range(len(arc) - 1):
        a, e = arc[i], arc[i + 1] - arc[i]
        denom = d.cross(e)
        if denom == 0:
            continue
        s = a.cross(e) / denom
        r = a.cross(d) / denom
        if s > 0 and 0 <= r <= 1 and (best is None or s < best):
            best = s
    return best if best is not None else Fraction(0)


def default_ball_collar(n: int, m: int, t: Rational) -> List[PlanePoint]:
    """The level arc p2 = 2tm across V_{n^2, nm-1}."""
    h = 2 * Fraction(t) * m
    P, Q = n * n, n * m - 1
    return [PlanePoint(Fraction(0), h), PlanePoint(h * P / Q, h)]


@dataclass(frozen=True)
class BallBase:
    n: int
    m: int
    t: Fraction
    node: FocusFocusNode
    collar: Tuple[PlanePoint, ...]
    region: BaseDiagram
    canonicalized: bool = False

    @property
    def ambient(self) -> ConeBase:
        return cone_base(self.n * self.n, self.n * self.m - 1)

    @property
    def gluing(self) -> UniMat:
        return monodromy(self.node.eigen_dir)

    def eigenline_boundary_point(self) -> PlanePoint:
        """Follow the eigenline back from the node until it reaches p1 = 0."""
        e = self.node.eigen_dir
        s = self.node.position.p1 / e.x
        return self.node.position - e.as_point().scaled(s)

    def to_dict(self) -> dict:
        return {
            "model": "ball",
            "n": self.n,
            "m": self.m,
            "t": rational_str(self.t),
            "canonicalized": self.canonicalized,
            "ambient": {"p": self.n * self.n, "q": self.n * self.m - 1},
            "node": self.node.to_dict(),
            "monodromy": self.gluing.rows(),
            "vanishing_cycle": vanishing_cycle(self.node.eigen_dir).to_list(),
            "eigenline_boundary_point": self.eigenline_boundary_point().to_list(),
            "collar": [p.to_list() for p in self.collar],
            "diagram": self.region.to_dict(),
            "homology": ball_homology(self.n, self.m).to_dict(),
            "fit_max_t": rational_str(fit_max_t(self.collar, self.n, self.m)),
        }


def build_ball_base(n: int, m: int, t: Rational, collar: Optional[Sequence[PlanePoint]] = None) -> BallBase:
    m_in = m
    m = canonical_m(n, m)
    t = Fraction(t)
    if t <= 0:
        raise BlowdownError("OutOfRange", f"need t > 0, got {t}")
    P, Q = n * n, n * m - 1
    collar = orient_corner_arc(collar) if collar is not None else default_ball_collar(n, m, t)
    _check_ball_collar(collar, P, Q)
    t_star = fit_max_t(collar, n, m)
    if t >= t_star:
        raise BlowdownError("NodeOutside", f"node at t={t} is not inside the collar (t* = {t_star})")
    node = FocusFocusNode(PlanePoint(t * n, t * m), IntVec(n, m), ORIGIN)
    vertices = [ORIGIN, collar[-1]] + list(collar[-2:0:-1]) + [collar[0]]
    strata = [CL] + [TC] * (len(collar) - 1) + [CL]
    region = BaseDiagram(tuple(vertices), tuple(strata), nodes=(node,))
    assert contains(region, node.position)
    return BallBase(n, m, t, node, tuple(collar), region, canonicalized=m != m_in)
