"""
Integral-affine base diagrams
Planar regions with typed boundary, and the rules that read 4-manifold
topology (smooth corners, orbifold points, spheres) off their geometry
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from src.errors import BlowdownError
from src.lattice import (
    AffineMap,
    IntVec,
    PlanePoint,
    Rational,
    UniMat,
    affine_length,
    cross,
    direction_of,
    rational_str,
)

logger = logging.getLogger(__name__)


class StratumKind(str, Enum):
    CIRCLE_LOCUS = "CircleLocus"
    TORUS_CUT = "TorusCut"
    EXCISED = "Excised"


@dataclass(frozen=True)
class BoundaryStratum:
    kind: StratumKind
    start: PlanePoint
    end: Optional[PlanePoint] = None
    direction: Optional[IntVec] = None  # set for rays only

    @property
    def is_ray(self) -> bool:
        return self.end is None

    def to_dict(self) -> dict:
        data = {"kind": self.kind.value, "start": self.start.to_list()}
        if self.end is not None:
            data["end"] = self.end.to_list()
        if self.direction is not None:
            data["direction"] = self.direction.to_list()
        return data


@dataclass(frozen=True)
class VertexReading:
    kind: str  # "Smooth" or "Orbifold"
    order: int = 1

    def to_dict(self) -> dict:
        return {"kind": self.kind, "order": self.order}


@dataclass(frozen=True)
class EdgeReading:
    area: Fraction
    self_int: int

    def to_dict(self) -> dict:
        return {"area": rational_str(self.area), "self_int": self.self_int}


@dataclass(frozen=True)
class BaseDiagram:
    """
    A region in R^2 traversed counterclockwise.

    Bounded diagrams: edge i joins vertices[i] and vertices[i+1] (cyclically).
    Unbounded diagrams: edge 0 comes in from infinity along -ray_in to
    vertices[0], edge i (1 <= i < N) joins vertices[i-1] and vertices[i],
    edge N leaves vertices[-1] along ray_out.
    """

    vertices: Tuple[PlanePoint, ...]
    strata: Tuple[StratumKind, ...]
    ray_in: Optional[IntVec] = None
    ray_out: Optional[IntVec] = None
    nodes: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "strata", tuple(StratumKind(s) for s in self.strata))
        object.__setattr__(self, "nodes", tuple(self.nodes))
        if (self.ray_in is None) != (self.ray_out is None):
            raise BlowdownError("UnboundedRegion", "an unbounded diagram needs both rays")
        if self.bounded:
            if len(self.vertices) < 3:
                raise BlowdownError("DegenerateSegment", "a bounded region needs at least 3 vertices")
            expected = len(self.vertices)
        else:
            if not self.vertices:
                raise BlowdownError("DegenerateSegment", "an unbounded region needs a vertex")
            for ray in (self.ray_in, self.ray_out):
                if not ray.is_primitive():
                    raise BlowdownError("NotPrimitive", f"ray direction {ray.to_list()} is not primitive")
            expected = len(self.vertices) + 1
        if len(self.strata) != expected:
            raise BlowdownError("OutOfRange", f"{len(self.strata)} strata for {expected} edges")

    @property
    def bounded(self) -> bool:
        return self.ray_in is None

    @property
    def edge_count(self) -> int:
        return len(self.strata)

    def _finite_endpoints(self, edge: int) -> Tuple[PlanePoint, PlanePoint]:
        if self.bounded:
            n = len(self.vertices)
            return self.vertices[edge % n], self.vertices[(edge + 1) % n]
        return self.vertices[edge - 1], self.vertices[edge]

    def is_finite_edge(self, edge: int) -> bool:
        return self.bounded or 0 < edge < self.edge_count - 1

    def edge(self, edge: int) -> BoundaryStratum:
        if not 0 <= edge < self.edge_count:
            raise BlowdownError("OutOfRange", f"edge {edge} of {self.edge_count}")
        kind = self.strata[edge]
        if self.is_finite_edge(edge):
            a, b = self._finite_endpoints(edge)
            return BoundaryStratum(kind, a, b)
        if edge == 0:
            return BoundaryStratum(kind, self.vertices[0], None, self.ray_in)
        return BoundaryStratum(kind, self.vertices[-1], None, self.ray_out)

    def edges(self) -> List[BoundaryStratum]:
        return [self.edge(i) for i in range(self.edge_count)]

    def edge_direction(self, edge: int) -> IntVec:
        """Primitive direction of travel along the edge (counterclockwise)."""
        if self.is_finite_edge(edge):
            return direction_of(*self._finite_endpoints(edge))[0]
        return -self.ray_in if edge == 0 else self.ray_out

    def neighbours(self, edge: int) -> Tuple[Optional[int], Optional[int]]:
        if self.bounded:
            n = self.edge_count
            return (edge - 1) % n, (edge + 1) % n
        prev_edge = edge - 1 if edge > 0 else None
        next_edge = edge + 1 if edge < self.edge_count - 1 else None
        return prev_edge, next_edge

    def finite_edges(self, kind: Optional[StratumKind] = None) -> List[int]:
        return [
            i for i in range(self.edge_count)
            if self.is_finite_edge(i) and (kind is None or self.strata[i] == kind)
        ]

    def to_dict(self) -> dict:
        data = {
            "vertices": [v.to_list() for v in self.vertices],
            "strata": [s.value for s in self.strata],
        }
        if not self.bounded:
            data["rays"] = {"in": self.ray_in.to_list(), "out": self.ray_out.to_list()}
        if self.nodes:
            data["nodes"] = [node.to_dict() for node in self.nodes]
        return data


def read_vertex(u: IntVec, v: IntVec) -> VertexReading:
    if not (u.is_primitive() and v.is_primitive()):
        raise BlowdownError("NotPrimitive", f"corner vectors {u.to_list()}, {v.to_list()} must be primitive")
    order = abs(cross(u, v))
    if order == 0:
        raise BlowdownError("DegenerateCorner", f"{u.to_list()} and {v.to_list()} are parallel")
    if order == 1:
        return VertexReading("Smooth", 1)
    return VertexReading("Orbifold", order)


def read_corner(diagram: BaseDiagram, vertex: int) -> VertexReading:
    """read_vertex at a vertex of a diagram, with both edges pointing away from it."""
    if diagram.bounded:
        incoming, outgoing = (vertex - 1) % diagram.edge_count, vertex
    else:
        incoming, outgoing = vertex, vertex + 1
    for e in (incoming, outgoing):
        if diagram.strata[e] != StratumKind.CIRCLE_LOCUS:
            raise BlowdownError("NotASphere", f"edge {e} at vertex {vertex} is {diagram.strata[e].value}")
    return read_vertex(-diagram.edge_direction(incoming), diagram.edge_direction(outgoing))


def read_edge(diagram: BaseDiagram, edge: int) -> EdgeReading:
    if not diagram.is_finite_edge(edge):
        raise BlowdownError("NotASphere", f"edge {edge} is unbounded")
    prev_edge, next_edge = diagram.neighbours(edge)
    for e in (edge, prev_edge, next_edge):
        if diagram.strata[e] != StratumKind.CIRCLE_LOCUS:
            raise BlowdownError("NotASphere", f"edge {e} is {diagram.strata[e].value}, not a circle locus")
    u = -diagram.edge_direction(prev_edge)
    v = diagram.edge_direction(next_edge)
    a, b = diagram._finite_endpoints(edge)
    return EdgeReading(affine_length(a, b), cross(u, v))


def transform(diagram: BaseDiagram, A: UniMat, b: Tuple[Rational, Rational] = (0, 0)) -> BaseDiagram:
    return transform_by(diagram, AffineMap(A, PlanePoint.of(*b)))


def transform_by(diagram: BaseDiagram, chart: AffineMap) -> BaseDiagram:
    """Image of the diagram; orientation-reversing charts re-traverse it counterclockwise."""
    A = chart.matrix
    vertices = [chart.apply(v) for v in diagram.vertices]
    strata = list(diagram.strata)
    ray_in = ray_out = None
    if not diagram.bounded:
        ray_in, ray_out = A.apply(diagram.ray_in), A.apply(diagram.ray_out)
    if A.det < 0:
        if diagram.bounded:
            n = len(vertices)
            vertices = [vertices[0]] + vertices[:0:-1]
            strata = [strata[(n - 1 - j) % n] for j in range(n)]
        else:
            vertices.reverse()
            strata.reverse()
            ray_in, ray_out = ray_out, ray_in
    nodes = tuple(node.transformed(chart) for node in diagram.nodes)
    return BaseDiagram(tuple(vertices), tuple(strata), ray_in, ray_out, nodes)


def signed_area(points: Sequence[PlanePoint]) -> Fraction:
    total = Fraction(0)
    n = len(points)
    for i in range(n):
        total += points[i].cross(points[(i + 1) % n])
    return total / 2


def region_area(diagram: BaseDiagram) -> Fraction:
    if not diagram.bounded:
        raise BlowdownError("UnboundedRegion", "an unbounded region has infinite area")
    return abs(signed_area(diagram.vertices))


def _dot(a: PlanePoint, b: PlanePoint) -> Fraction:
    return a.p1 * b.p1 + a.p2 * b.p2


def on_segment(p: PlanePoint, a: PlanePoint, b: PlanePoint) -> bool:
    if (b - a).cross(p - a) != 0:
        return False
    return _dot(p - a, p - b) <= 0


def on_ray(p: PlanePoint, origin: PlanePoint, direction: IntVec, strict: bool = False) -> bool:
    d = direction.as_point()
    rel = p - origin
    if d.cross(rel) != 0:
        return False
    along = _dot(rel, d)
    return along > 0 if strict else along >= 0


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def segments_intersect(a: PlanePoint, b: PlanePoint, c: PlanePoint, d: PlanePoint) -> bool:
    d1 = _sign((b - a).cross(c - a))
    d2 = _sign((b - a).cross(d - a))
    d3 = _sign((d - c).cross(a - c))
    d4 = _sign((d - c).cross(b - c))
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    return (
        (d1 == 0 and on_segment(c, a, b))
        or (d2 == 0 and on_segment(d, a, b))
        or (d3 == 0 and on_segment(a, c, d))
        or (d4 == 0 and on_segment(b, c, d))
    )


def contains(diagram: BaseDiagram, point: PlanePoint) -> bool:
    """Closed point-in-region test for bounded diagrams."""
    if not diagram.bounded:
        raise BlowdownError("UnboundedRegion", "containment is only decided for bounded regions")
    pts = diagram.vertices
    n = len(pts)
    inside = False
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        if on_segment(point, a, b):
            return True
        if (a.p2 > point.p2) != (b.p2 > point.p2):
            x = a.p1 + (point.p2 - a.p2) * (b.p1 - a.p1) / (b.p2 - a.p2)
            if x > point.p1:
                inside = not inside
    return inside


def corner_apex(diagram: BaseDiagram) -> PlanePoint:
    """Where the lines of the two boundary rays meet."""
    if diagram.bounded:
        raise BlowdownError("UnboundedRegion", "a bounded region has no boundary rays")
    r_in, r_out = diagram.ray_in.as_point(), diagram.ray_out.as_point()
    denom = r_in.cross(r_out)
    if denom == 0:
        raise BlowdownError("DegenerateCorner", "the boundary rays are parallel")
    start, end = diagram.vertices[0], diagram.vertices[-1]
    s = (end - start).cross(r_out) / denom
    return start + r_in.scaled(s)


def radially_transverse(arc: Sequence[PlanePoint], apex: PlanePoint) -> bool:
    """
    True iff the polar angle about apex is strictly monotone along the arc
    and sweeps less than a full turn. Decided with exact cross products.
    """
    if len(arc) < 2:
        raise BlowdownError("DegenerateSegment", "an arc needs two points")
    rel = [p - apex for p in arc]
    for i in range(len(rel) - 1):
        if rel[i].is_origin() or on_segment(apex, arc[i], arc[i + 1]):
            raise BlowdownError("ArcHitsApex", f"segment {i} passes through {apex.to_list()}")
    if rel[-1].is_origin():
        raise BlowdownError("ArcHitsApex", "the arc ends at the apex")
    turns = [_sign(rel[i].cross(rel[i + 1])) for i in range(len(rel) - 1)]
    if 0 in turns or len(set(turns)) != 1:
        return False
    # a sweep of a full turn or more must come back to the first radial ray
    d0 = rel[0]
    for i in range(1, len(rel) - 1):
        a, b = rel[i], rel[i + 1]
        ca, cb = d0.cross(a), d0.cross(b)
        if ca * cb > 0:
            continue
        if ca == cb:
            continue
        r = ca / (ca - cb)
        hit = a + (b - a).scaled(r)
        if _dot(hit, d0) > 0:
            return False
    return True
