from fractions import Fraction

import pytest

from src.affine_base import (
    BaseDiagram,
    EdgeReading,
    StratumKind,
    VertexReading,
    contains,
    radially_transverse,
    read_corner,
    read_edge,
    read_vertex,
    region_area,
    segments_intersect,
    transform,
)
from src.errors import BlowdownError
from src.lattice import AffineMap, IntVec, PlanePoint, UniMat

CL = StratumKind.CIRCLE_LOCUS


def P(x, y):
    return PlanePoint.of(Fraction(x), Fraction(y))


def polygon(*pts):
    return BaseDiagram(tuple(P(*p) for p in pts), (CL,) * len(pts))


@pytest.fixture
def trapezoid():
    # moment polygon of the first Hirzebruch surface
    return polygon((0, 0), (3, 0), (1, 2), (0, 2))


def test_read_vertex():
    assert read_vertex(IntVec(1, 0), IntVec(0, 1)) == VertexReading("Smooth", 1)
    assert read_vertex(IntVec(0, 1), IntVec(4, 1)) == VertexReading("Orbifold", 4)
    with pytest.raises(BlowdownError) as exc:
        read_vertex(IntVec(1, 2), IntVec(-1, -2))
    assert exc.value.code == "DegenerateCorner"
    with pytest.raises(BlowdownError) as exc:
        read_vertex(IntVec(2, 0), IntVec(0, 1))
    assert exc.value.code == "NotPrimitive"


def test_triangle_edges_are_plus_one_spheres():
    triangle = polygon((0, 0), (1, 0), (0, 1))
    for e in range(3):
        assert read_edge(triangle, e) == EdgeReading(Fraction(1), 1)
        assert read_corner(triangle, e).kind == "Smooth"


def test_trapezoid_readings(trapezoid):
    readings = [read_edge(trapezoid, e) for e in range(4)]
    assert [(r.area, r.self_int) for r in readings] == [(3, 1), (2, 0), (1, -1), (2, 0)]
    assert region_area(trapezoid) == 4


def test_torus_cut_edges_are_not_spheres(trapezoid):
    cut = BaseDiagram(trapezoid.vertices, (CL, CL, StratumKind.TORUS_CUT, CL))
    with pytest.raises(BlowdownError) as exc:
        read_edge(cut, 1)
    assert exc.value.code == "NotASphere"
    assert read_edge(cut, 0).self_int == 1


@pytest.mark.parametrize(
    "A, b",
    [
        (UniMat(1, 1, 0, 1), (2, -1)),
        (UniMat(0, -1, 1, 0), (Fraction(1, 2), 0)),
        (UniMat(1, 0, 0, -1), (0, 3)),
        (UniMat(2, 1, 1, 0), (-5, Fraction(7, 3))),
    ],
)
def test_readings_survive_transform(trapezoid, A, b):
    image = transform(trapezoid, A, b)
    before = [read_edge(trapezoid, e) for e in range(4)]
    after = [read_edge(image, e) for e in range(4)]
    if A.det < 0:
        after.reverse()
    assert after == before
    assert region_area(image) == region_area(trapezoid)


def test_unbounded_area_raises():
    cone = BaseDiagram((P(0, 0),), (CL, CL), ray_in=IntVec(0, 1), ray_out=IntVec(4, 1))
    with pytest.raises(BlowdownError) as exc:
        region_area(cone)
    assert exc.value.code == "UnboundedRegion"
    assert read_corner(cone, 0) == VertexReading("Orbifold", 4)


def test_contains(trapezoid):
    assert contains(trapezoid, P(1, 1))
    assert contains(trapezoid, P(2, 1))  # on the slanted edge
    assert not contains(trapezoid, P(Fraction(5, 2), 1))
    assert not contains(trapezoid, P(-1, 1))


def test_segments_intersect():
    assert segments_intersect(P(0, 0), P(2, 2), P(0, 2), P(2, 0))
    assert segments_intersect(P(0, 0), P(2, 0), P(2, 0), P(3, 5))
    assert segments_intersect(P(0, 0), P(2, 0), P(1, 0), P(3, 0))
    assert not segments_intersect(P(0, 0), P(1, 1), P(2, 2), P(3, 3))
    assert not segments_intersect(P(0, 0), P(2, 0), P(0, 1), P(2, 1))


def test_radial_transversality():
    origin = P(0, 0)
    assert radially_transverse([P(0, 2), P(8, 2)], origin)
    assert radially_transverse([P(1, 0), P(0, 1), P(-1, 0), P(0, -1)], origin)
    assert not radially_transverse([P(0, 2), P(4, 3), P(2, 3), P(8, 2)], origin)
    # more than a full turn
    assert not radially_transverse([P(1, 0), P(0, 1), P(-1, 0), P(0, -1), P(1, Fraction(1, 2))], origin)
    with pytest.raises(BlowdownError) as exc:
        radially_transverse([P(-1, -1), P(1, 1)], origin)
    assert exc.value.code == "ArcHitsApex"


def transversality(arc, apex):
    try:
        return radially_transverse(arc, apex)
    except BlowdownError as e:
        return e.code


def test_radial_transversality_is_frame_independent(rng):
    generators = (UniMat(0, -1, 1, 0), UniMat(1, 1, 0, 1), UniMat(1, 0, 0, -1))
    outcomes = set()
    for _ in range(200):
        A = UniMat.identity()
        for _ in range(6):
            A = rng.choice(generators) @ A
        frame = AffineMap(A, P(Fraction(rng.randint(-9, 9), rng.randint(1, 4)), rng.randint(-9, 9)))
        apex = P(rng.randint(-3, 3), rng.randint(-3, 3))
        arc = [P(rng.randint(-6, 6), rng.randint(-6, 6)) for _ in range(rng.randint(2, 5))]
        expected = transversality(arc, apex)
        outcomes.add(expected)
        assert transversality([frame.apply(p) for p in arc], frame.apply(apex)) == expected
    # the sample must exercise both answers
    assert {True, False} <= outcomes
