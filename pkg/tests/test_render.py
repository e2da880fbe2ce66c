from fractions import Fraction

import pytest

from src.errors import BlowdownError
from src.render import render_payload, scene_from_payload
from src.toolkit import BlowdownToolkit


@pytest.fixture(scope="module")
def toolkit():
    return BlowdownToolkit()


def test_ball_scene_has_node_and_cut(toolkit):
    scene = scene_from_payload(toolkit.model("ball", 2, 1, t=1))
    assert scene.nodes == [(Fraction(2), Fraction(1))]
    assert scene.cuts == [((0, 0), (2, 1))]
    kinds = sorted(kind for _, _, kind in scene.segments)
    assert kinds == ["CircleLocus", "CircleLocus", "TorusCut"]


def test_cone_scene_clips_rays_inside_the_viewport(toolkit):
    scene = scene_from_payload(toolkit.model("cone", 4, 1))
    assert len(scene.rays) == 2
    assert scene.corners == [((0, 0), "Z/4")]
    xmin, ymin, xmax, ymax = scene.bounds
    for _, end, _ in scene.rays:
        assert xmin < end[0] < xmax and ymin < end[1] < ymax


def test_chain_scene_labels_edges(toolkit):
    scene = scene_from_payload(toolkit.model("chain", 3, 2, areas=[1, 1]))
    assert [text for _, text in scene.labels] == ["1/1, -2", "1/1, -5"]


def test_not_a_model_payload():
    with pytest.raises(BlowdownError):
        scene_from_payload({"coeffs": [4]})


@pytest.mark.parametrize("which, n, m, t", [("cone", 4, 1, None), ("chain", 5, 2, None), ("ball", 3, 1, Fraction(1, 4)), ("nodal", 2, 0, None)])
def test_svg_is_byte_deterministic(tmp_path, toolkit, which, n, m, t):
    payload = toolkit.model(which, n, m, t=t)
    first = render_payload(payload, tmp_path / "a.svg").read_bytes()
    second = render_payload(payload, tmp_path / "b.svg").read_bytes()
    assert first == second
    assert first.startswith(b"<?xml")
    assert b"<svg" in first


def test_svg_carries_corner_and_edge_labels(tmp_path, toolkit):
    cone = render_payload(toolkit.model("cone", 4, 1), tmp_path / "cone.svg").read_bytes()
    assert b"Z/4" in cone
    chain = render_payload(toolkit.model("chain", 3, 2, areas=[1, 1]), tmp_path / "chain.svg").read_bytes()
    assert b"1/1, -2" in chain and b"1/1, -5" in chain
