"""
Blowdown toolkit
One entry point per command; every method returns a JSON-ready dict
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from math import gcd
from typing import Dict, List, Optional, Sequence

from src.affine_base import read_edge, region_area
from src.config import Settings, load_settings
from src.contfrac import chain_coeffs, evaluate, expand
from src.descriptor import load_descriptor, save_descriptor
from src.errors import BlowdownError
from src.lattice import IntVec, PlanePoint, Rational, rational_str
from src.lens import LensSpace, equivalent, from_gluing
from src.models import (
    ball_homology,
    build_ball_base,
    build_chain_polygon,
    collar_region,
    cone_base,
    default_collar,
    fit_max_t,
    lens_of_cone,
    nodal_base,
)
from src.plumbing import (
    SphereChain,
    boundary_lens,
    chain_determinant,
    euler_characteristic,
    intersection_matrix,
    is_negative_definite,
    leading_minors,
    signature,
)
from src.surgery import blowdown

logger = logging.getLogger(__name__)


def sweep_pair(n: int, m: int) -> Dict:
    """All per-pair consistency checks; module level so worker processes can pickle it."""
    cf = chain_coeffs(n, m)
    chain = SphereChain(cf.coeffs, (1,) * cf.k)
    polygon = build_chain_polygon(chain)
    checks = {
        "coeffs_ge_2": all(b >= 2 for b in cf.coeffs),
        "round_trip": evaluate(cf) == (n * n, n * m - 1),
        "negative_definite": is_negative_definite(intersection_matrix(chain)),
        "det_is_n2": abs(chain_determinant(chain)) == n * n,
        "slope": polygon.u[-1] == IntVec(n * n, n * m - 1),
        "boundary_match": equivalent(lens_of_cone(cone_base(n * n, n * m - 1)), boundary_lens(chain)),
        "h1_is_n": ball_homology(n, m).h1_order == n,
    }
    return {"n": n, "m": m, "k": cf.k, "coeffs": list(cf.coeffs), "checks": checks, "ok": all(checks.values())}


def coprime_pairs(n_max: int) -> List[tuple]:
    return [(n, m) for n in range(2, n_max + 1) for m in range(1, n) if gcd(n, m) == 1]


class BlowdownToolkit:
    """
    Computations behind the command line
    Exact arithmetic throughout; rationals leave as "p/q" strings
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or load_settings()

    def expand(self, n: Optional[int] = None, m: Optional[int] = None,
               y: Optional[int] = None, x: Optional[int] = None) -> Dict:
        if n is not None and m is not None:
            return {**chain_coeffs(n, m).to_dict(), "canonicalized": m != m % n}
        if y is not None and x is not None:
            return expand(y, x).to_dict()
        raise BlowdownError("OutOfRange", "give either n and m or y and x")

    def _chain(self, coeffs: Optional[Sequence[int]], n: Optional[int], m: Optional[int],
               areas: Optional[Sequence[Rational]]) -> SphereChain:
        if coeffs is None:
            if n is None or m is None:
                raise BlowdownError("OutOfRange", "give either coeffs or n and m")
            coeffs = chain_coeffs(n, m).coeffs
        if areas is None:
            areas = (self.settings.default_area,) * len(coeffs)
        return SphereChain(tuple(coeffs), tuple(areas))

    def chain(self, coeffs=None, n=None, m=None, areas=None) -> Dict:
        chain = self._chain(coeffs, n, m, areas)
        form = intersection_matrix(chain)
        data = {
            "chain": chain.to_dict(),
            "intersection_matrix": form.to_list(),
            "leading_minors": leading_minors(form),
            "determinant": chain_determinant(chain),
            "negative_definite": is_negative_definite(form),
            "euler": euler_characteristic(chain),
            "signature": signature(chain),
            "boundary": boundary_lens(chain).to_dict(),
        }
        if coeffs is None:
            data["canonicalized"] = m != m % n
        return data

    def lens(self, p=None, q=None, p2=None, q2=None, mu1=None, mu2=None, oriented: bool = True) -> Dict:
        if mu1 is not None and mu2 is not None:
            first = from_gluing(mu1, mu2)
        elif p is not None and q is not None:
            first = LensSpace.normalized(p, q)
        else:
            raise BlowdownError("OutOfRange", "give p and q or two meridians")
        result = {"lens": first.to_dict(), "mirror": first.mirror().to_dict()}
        if p2 is not None and q2 is not None:
            second = LensSpace.normalized(p2, q2)
            result["other"] = second.to_dict()
            result["oriented"] = oriented
            result["equivalent"] = equivalent(first, second, oriented=oriented)
        return result

    def model(self, which: str, n: int, m: int = 0, t: Optional[Rational] = None, areas=None,
              collar: Optional[Sequence[PlanePoint]] = None) -> Dict:
        if which == "cone":
            return cone_base(n, m).to_dict()
        if which == "nodal":
            return nodal_base(n).to_dict()
        if which == "ball":
            if t is None:
                raise BlowdownError("OutOfRange", "the ball model needs --t")
            return build_ball_base(n, m, t, collar=collar).to_dict()
        if which == "chain":
            polygon = build_chain_polygon(self._chain(None, n, m, areas))
            payload = polygon.to_dict()
            payload["edges"] = [
                {"edge": e, **read_edge(polygon.X, e).to_dict()} for e in polygon.X.finite_edges()
            ]
            payload["collar"] = collar_region(polygon.X, collar or default_collar(polygon)).to_dict()
            return payload
        raise BlowdownError("OutOfRange", f"unknown model {which!r}")

    def fit(self, n: int, m: int, areas=None, collar: Optional[Sequence[PlanePoint]] = None) -> Dict:
        polygon = build_chain_polygon(self._chain(None, n, m, areas))
        region = collar_region(polygon.X, collar or default_collar(polygon))
        chart = polygon.corner_chart()
        t_max = fit_max_t([chart.apply(x) for x in region.inner_arc], n, m % n)
        return {
            "n": n,
            "m": m,
            "canonicalized": m != m % n,
            "t_max": rational_str(t_max),
            "fits": t_max > 0,
            "area_W": rational_str(region_area(region.W)),
            "collar": region.to_dict(),
        }

    def blowdown(self, path: str, chain_index: int = 0, n=None, m=None, t=None, collar=None,
                 allow_reversed: bool = False, out: Optional[str] = None) -> Dict:
        descr = load_descriptor(path)
        report = blowdown(descr, chain_index, collar=collar, n=n, m=m, t=t, allow_reversed=allow_reversed)
        result = report.to_dict()
        if out:
            result["written"] = str(save_descriptor(report.after, out))
        return result

    def sweep(self, n_max: int, workers: Optional[int] = None) -> List[Dict]:
        pairs = coprime_pairs(n_max)
        workers = workers or self.settings.sweep_workers
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                rows = list(pool.map(sweep_pair, [n for n, _ in pairs], [m for _, m in pairs]))
        else:
            rows = [sweep_pair(n, m) for n, m in pairs]
        failed = [r for r in rows if not r["ok"]]
        if failed:
            logger.warning("%d of %d pairs failed", len(failed), len(rows))
        return rows


# Create singleton
_toolkit = None


def get_toolkit() -> BlowdownToolkit:
    global _toolkit
    if _toolkit is None:
        _toolkit = BlowdownToolkit()
    return _toolkit
