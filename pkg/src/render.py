"""
SVG rendering of base diagrams
Scenes are assembled from the JSON payloads printed by `model`, so a saved
payload re-renders to the same bytes.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Tuple, Union

import matplotlib

matplotlib.use("svg")

from matplotlib import rc_context  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from src.errors import BlowdownError  # noqa: E402
from src.lattice import parse_rational, rational_str  # noqa: E402

logger = logging.getLogger(__name__)

Point = Tuple[Fraction, Fraction]

STYLES = {
    "CircleLocus": {"color": "black", "linewidth": 1.6, "linestyle": "-"},
    "TorusCut": {"color": "0.45", "linewidth": 1.0, "linestyle": "-"},
    "Excised": {"color": "0.45", "linewidth": 1.0, "linestyle": ":"},
}

SVG_RC = {"svg.hashsalt": "blowdown", "svg.fonttype": "none"}


@dataclass
class SvgScene:
    segments: List[Tuple[Point, Point, str]] = field(default_factory=list)
    rays: List[Tuple[Point, Point, str]] = field(default_factory=list)
    nodes: List[Point] = field(default_factory=list)
    cuts: List[Tuple[Point, Point]] = field(default_factory=list)
    labels: List[Tuple[Point, str]] = field(default_factory=list)
    corners: List[Tuple[Point, str]] = field(default_factory=list)
    bounds: Optional[Tuple[Fraction, Fraction, Fraction, Fraction]] = None

    def points(self) -> List[Point]:
        pts: List[Point] = list(self.nodes)
        for a, b, _ in self.segments:
            pts += [a, b]
        for a, b in self.cuts:
            pts += [a, b]
        pts += [p for p, _ in self.corners]
        return pts


def _point(raw) -> Point:
    return parse_rational(raw[0]), parse_rational(raw[1])


def _add_diagram(scene: SvgScene, diagram: dict, rays: List[Tuple[Point, Tuple[int, int], str]]) -> None:
    vertices = [_point(v) for v in diagram["vertices"]]
    strata = diagram["strata"]
    if "rays" not in diagram:
        for i, kind in enumerate(strata):
            scene.segments.append((vertices[i], vertices[(i + 1) % len(vertices)], kind))
    else:
        rays.append((vertices[0], tuple(diagram["rays"]["in"]), strata[0]))
        for i in range(1, len(vertices)):
            scene.segments.append((vertices[i - 1], vertices[i], strata[i]))
        rays.append((vertices[-1], tuple(diagram["rays"]["out"]), strata[-1]))
    for node in diagram.get("nodes", []):
        scene.nodes.append(_point(node["position"]))
        a, b = node["cut"]
        scene.cuts.append((_point(a), _point(b)))


def _edge_midpoint(diagram: dict, edge: int) -> Point:
    vertices = [_point(v) for v in diagram["vertices"]]
    if "rays" in diagram:
        a, b = vertices[edge - 1], vertices[edge]
    else:
        a, b = vertices[edge], vertices[(edge + 1) % len(vertices)]
    return (a[0] + b[0]) / 2, (a[1] + b[1]) / 2


def scene_from_payload(payload: dict, margin: Fraction = Fraction(1, 20)) -> SvgScene:
    """Collect outlines, rays, nodes, cuts and labels from a model payload."""
    if "model" not in payload:
        raise BlowdownError("BadDescriptor", "not a model payload (missing 'model')")
    scene = SvgScene()
    rays: List[Tuple[Point, Tuple[int, int], str]] = []
    diagrams = []
    if "diagram" in payload:
        diagrams.append(payload["diagram"])
    if "collar" in payload and isinstance(payload["collar"], dict):
        diagrams.append(payload["collar"]["W"])
    for diagram in diagrams:
        _add_diagram(scene, diagram, rays)
    if payload["model"] == "nodal":
        origin = (Fraction(0), Fraction(0))
        scene.nodes.append(origin)
        rays.append((origin, tuple(payload["eigenline"]), "cut"))
    for reading in payload.get("edges", []):
        text = f"{reading['area']}, {reading['self_int']}"
        scene.labels.append((_edge_midpoint(payload["diagram"], reading["edge"]), text))
    corner = payload.get("corner")
    if corner and corner["kind"] == "Orbifold":
        scene.corners.append((_point(payload["apex"]), f"Z/{corner['order']}"))

    pts = scene.points() + [start for start, _, _ in rays] or [(Fraction(0), Fraction(0))]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    extent = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1))
    for start, d, kind in rays:
        s = extent / max(abs(d[0]), abs(d[1]))
        end = (start[0] + s * d[0], start[1] + s * d[1])
        scene.rays.append((start, end, kind))
        xs.append(end[0])
        ys.append(end[1])
    pad = margin * max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1))
    scene.bounds = (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)
    logger.debug("scene bounds %s", [rational_str(b) for b in scene.bounds])
    return scene


def _xy(*pts: Point):
    return [float(p[0]) for p in pts], [float(p[1]) for p in pts]


def _at(p: Point) -> Tuple[float, float]:
    return float(p[0]), float(p[1])


def render_svg(scene: SvgScene, path: Union[str, Path], size: int = 480) -> Path:
    path = Path(path)
    with rc_context(SVG_RC):
        fig = Figure(figsize=(size / 100, size / 100), dpi=100)
        ax = fig.add_axes((0, 0, 1, 1))
        ax.set_axis_off()
        for a, b, kind in scene.segments:
            ax.plot(*_xy(a, b), **STYLES.get(kind, STYLES["CircleLocus"]))
        for a, b, kind in scene.rays:
            style = dict(STYLES.get(kind, STYLES["CircleLocus"]))
            if kind == "cut":
                style = {"color": "black", "linewidth": 1.0, "linestyle": "--"}
            ax.plot(*_xy(a, b), **style)
        for a, b in scene.cuts:
            ax.plot(*_xy(a, b), color="black", linewidth=1.0, linestyle="--")
        for p in scene.nodes:
            # crossed circle
            ax.plot(*_xy(p), marker="o", markersize=9, markerfacecolor="none", markeredgecolor="black")
            ax.plot(*_xy(p), marker="x", markersize=6, color="black")
        for p, text in scene.corners:
            ax.plot(*_xy(p), marker="s", markersize=5, color="black")
            ax.annotate(text, _at(p), xytext=(4, -10), textcoords="offset points", fontsize=8)
        for p, text in scene.labels:
            ax.annotate(text, _at(p), xytext=(0, -12), textcoords="offset points", fontsize=8, ha="center")
        xmin, ymin, xmax, ymax = (float(b) for b in scene.bounds)
        ax.set_xlim(xmin, xmax)
        ax.set_ylim(ymin, ymax)
        ax.set_aspect("equal", adjustable="box")
        fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    logger.debug("wrote %s", path)
    return path


def render_payload(payload: dict, path: Union[str, Path], size: int = 480, margin: Fraction = Fraction(1, 20)) -> Path:
    return render_svg(scene_from_payload(payload, margin), path, size)
