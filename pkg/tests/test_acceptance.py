"""
End-to-end properties over parameter sweeps
Everything is compared exactly; no tolerances anywhere.
"""

import json
from collections import defaultdict
from fractions import Fraction

import pytest
from sympy import totient

from src.affine_base import EdgeReading, read_edge, read_vertex, region_area, transform_by
from src.cli import main
from src.contfrac import chain_coeffs, evaluate
from src.descriptor import dumps_descriptor, load_descriptor
from src.errors import InfeasibleSurgery
from src.lattice import AffineMap, IntVec, PlanePoint, UniMat
from src.lens import equivalent
from src.models import (
    ball_homology,
    build_ball_base,
    build_chain_polygon,
    cone_base,
    default_ball_collar,
    lens_of_cone,
    monodromy,
    vanishing_cycle,
)
from src.plumbing import (
    SphereChain,
    boundary_lens,
    chain_determinant,
    euler_characteristic,
    intersection_matrix,
    is_negative_definite,
    signature,
)
from src.surgery import ManifoldDescriptor, blowdown, infer_parameters, volume_of_ball_piece
from src.toolkit import coprime_pairs

PAIRS = coprime_pairs(50)

GENERATORS = (UniMat(0, -1, 1, 0), UniMat(1, 1, 0, 1), UniMat(1, -1, 0, 1), UniMat(1, 0, 0, -1))


def random_unimodular(rng, steps=6):
    A = UniMat.identity()
    for _ in range(steps):
        A = rng.choice(GENERATORS) @ A
    return A


def random_frame(rng):
    shift = PlanePoint.of(Fraction(rng.randint(-20, 20), rng.randint(1, 9)), Fraction(rng.randint(-20, 20), rng.randint(1, 9)))
    return AffineMap(random_unimodular(rng), shift)


def random_primitive(rng, bound=60):
    while True:
        v = IntVec(rng.randint(-bound, bound), rng.randint(-bound, bound))
        if not v.is_zero() and v.is_primitive():
            return v


def random_area(rng):
    return Fraction(rng.randint(1, 12), rng.randint(1, 6))


def test_sweep_covers_every_coprime_pair():
    assert len(PAIRS) == sum(int(totient(n)) for n in range(2, 51))
    assert all(1 <= m < n for n, m in PAIRS)


def test_continued_fractions_round_trip():
    for n, m in PAIRS:
        cf = chain_coeffs(n, m)
        assert all(b >= 2 for b in cf.coeffs), (n, m)
        assert evaluate(cf) == (n * n, n * m - 1)
        assert cf.value() == Fraction(n * n, n * m - 1)


def test_plumbing_is_negative_definite_with_determinant_n_squared():
    for n, m in PAIRS:
        chain = SphereChain(chain_coeffs(n, m).coeffs)
        assert is_negative_definite(intersection_matrix(chain)), (n, m)
        assert abs(chain_determinant(chain)) == n * n, (n, m)


def test_chain_polygon_closes_with_the_cone_slope():
    for n, m in PAIRS:
        cf = chain_coeffs(n, m)
        polygon = build_chain_polygon(SphereChain(cf.coeffs, (Fraction(1),) * cf.k))
        assert polygon.u[0] == IntVec(0, -1) and polygon.u[1] == IntVec(1, 0)
        assert polygon.u[-1] == IntVec(n * n, n * m - 1), (n, m)
        assert polygon.u[-1].is_primitive()


def test_cone_boundary_matches_chain_boundary():
    for n, m in coprime_pairs(20):
        cone_lens = lens_of_cone(cone_base(n * n, n * m - 1))
        assert equivalent(cone_lens, boundary_lens(SphereChain(chain_coeffs(n, m).coeffs))), (n, m)


def test_single_minus_two_sphere_reads_back():
    polygon = build_chain_polygon(SphereChain((2,), (Fraction(3, 2),)))
    (edge,) = polygon.X.finite_edges()
    assert read_edge(polygon.X, edge) == EdgeReading(Fraction(3, 2), -2)


def test_monodromy_of_random_primitive_directions(rng):
    assert monodromy(IntVec(1, 0)).rows() == [[1, 1], [0, 1]]
    for _ in range(500):
        v = random_primitive(rng)
        M = monodromy(v)
        assert M.det == 1
        assert M.trace == 2
        assert M.apply(v) == v
        w = vanishing_cycle(v)
        assert w == IntVec(-v.y, v.x)
        assert M.transpose().inverse().apply(w) == w


def test_ball_homology_over_the_sweep():
    for n, m in PAIRS:
        h = ball_homology(n, m)
        assert h.h1_order == n
        assert h.invariant_factors[0] * h.invariant_factors[1] == n
        assert (h.b1, h.b2) == (0, 0)


def test_surgery_deltas_against_the_additivity_oracle(rng):
    by_length = defaultdict(list)
    for n, m in coprime_pairs(12):
        by_length[chain_coeffs(n, m).k].append((n, m))
    for i in range(100):
        k = i % 8 + 1
        n, m = rng.choice(by_length[k])
        coeffs = chain_coeffs(n, m).coeffs
        chain = SphereChain(coeffs, tuple(random_area(rng) for _ in coeffs))
        b2 = k + rng.randint(0, 10)
        descr = ManifoldDescriptor(f"synthetic-{i}", 2 + b2, -rng.randint(0, b2), b2, chains=(chain,))
        report = blowdown(descr, 0, n=n, m=m)
        assert report.k == k
        assert report.deltas == {"euler": -k, "signature": k, "b2": -k}
        assert report.deltas["euler"] == 1 - euler_characteristic(chain)
        assert report.deltas["signature"] == -signature(chain)
        after = report.after
        assert after.euler == descr.euler + 1 - euler_characteristic(chain)
        assert after.signature == descr.signature - signature(chain)
        assert after.b2 == descr.b2 - k


@pytest.mark.parametrize("n, m, h", [(2, 1, 1), (3, 1, 2), (3, 2, Fraction(5, 2)), (5, 2, 1), (7, 3, Fraction(1, 3))])
def test_ball_volume_does_not_depend_on_t(n, m, h):
    gamma = default_ball_collar(n, m, h)
    volume = volume_of_ball_piece(n, m, gamma)
    areas = {region_area(build_ball_base(n, m, h * f, collar=gamma).region) for f in (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(7, 4))}
    assert areas == {volume}


def test_vertex_readings_are_invariant(rng):
    for _ in range(100):
        u, v = random_primitive(rng, 20), random_primitive(rng, 20)
        if u.x * v.y - u.y * v.x == 0:
            continue
        A = random_unimodular(rng)
        assert read_vertex(A.apply(u), A.apply(v)) == read_vertex(u, v)


@pytest.mark.parametrize("coeffs, areas", [((4,), (1,)), ((2, 5), (1, Fraction(1, 2))), ((3, 5, 2), (1, Fraction(2, 3), Fraction(5, 4)))])
def test_edge_readings_are_invariant(rng, coeffs, areas):
    X = build_chain_polygon(SphereChain(coeffs, tuple(Fraction(a) for a in areas))).X
    last = len(X.vertices)
    for _ in range(100):
        frame = random_frame(rng)
        image = transform_by(X, frame)
        for edge in X.finite_edges():
            moved = last - edge if frame.matrix.det < 0 else edge
            assert read_edge(image, moved) == read_edge(X, edge)


@pytest.mark.parametrize("coeffs, areas", [((4,), (1,)), ((2, 5), (1, 1)), ((6, 2, 2), (Fraction(1, 2), 1, 3))])
def test_fit_and_blowdown_reports_are_invariant(rng, coeffs, areas):
    chain = SphereChain(coeffs, tuple(Fraction(a) for a in areas))
    descr = ManifoldDescriptor("frame-test", 20, -14, 18, chains=(chain,), symplectic_volume=Fraction(30))
    reference = blowdown(descr, 0).to_dict()
    for _ in range(100):
        assert blowdown(descr, 0, frame=random_frame(rng)).to_dict() == reference


def test_cli_round_trips_and_svgs_are_deterministic(capsys, tmp_path, descriptor_files):
    for path in descriptor_files:
        descr = load_descriptor(path)
        for index, chain in enumerate(descr.chains):
            try:
                n, m = infer_parameters(chain.coeffs)
            except InfeasibleSurgery:
                continue
            if chain.areas is None:
                continue
            written = tmp_path / f"{path.stem}-{index}.json"
            assert main(["blowdown", "--in", str(path), "--chain", str(index), "--out", str(written)]) == 0
            report = json.loads(capsys.readouterr().out)
            assert report["written"] == str(written)
            assert dumps_descriptor(load_descriptor(written)) == written.read_text()

            areas = ",".join(f"{a.numerator}/{a.denominator}" for a in chain.areas)
            first, second = tmp_path / "first.svg", tmp_path / "second.svg"
            assert main(["model", "chain", "--n", str(n), "--m", str(m), "--areas", areas, "--svg", str(first)]) == 0
            payload = tmp_path / "payload.json"
            payload.write_text(capsys.readouterr().out)
            assert main(["render", "--in", str(payload), "--svg", str(second)]) == 0
            capsys.readouterr()
            assert first.read_bytes() == second.read_bytes()
