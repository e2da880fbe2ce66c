"""
blowdown command line
JSON on stdout, {"error": code} on stderr; exit 0 ok, 2 bad input, 3 infeasible
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, List, Optional, TypeVar

from src.config import configure_logging, load_settings
from src.errors import BlowdownError
from src.lattice import IntVec, PlanePoint, parse_rational
from src.render import render_payload
from src.toolkit import BlowdownToolkit, get_toolkit

logger = logging.getLogger(__name__)

T = TypeVar("T")


def _ints(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise BlowdownError("BadArgument", f"not a list of integers: {text!r}")


def _vec(text: str) -> IntVec:
    values = _ints(text)
    if len(values) != 2:
        raise BlowdownError("BadArgument", f"expected two integers, got {text!r}")
    return IntVec(*values)


def _rationals(text: str):
    return [parse_rational(v) for v in text.split(",")]


def parse_collar(text: str) -> List[PlanePoint]:
    """'x1,y1;x2,y2;...' with exact rational coordinates."""
    points = []
    for chunk in text.split(";"):
        coords = chunk.split(",")
        if len(coords) != 2:
            raise BlowdownError("BadCollar", f"bad collar point {chunk!r}")
        try:
            points.append(PlanePoint(parse_rational(coords[0]), parse_rational(coords[1])))
        except BlowdownError as e:
            raise BlowdownError("BadCollar", f"bad collar point {chunk!r}: {e.detail}")
    return points


def _convert(convert: Callable[[str], T], text: Optional[str]) -> Optional[T]:
    return None if text is None else convert(text)


class BlowdownArgumentParser(argparse.ArgumentParser):
    """Usage errors surface as BlowdownError so main() reports them as JSON."""

    def error(self, message: str):
        raise BlowdownError("BadArgument", f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    # structured flags stay raw strings; run() converts them
    parser = BlowdownArgumentParser(prog="blowdown", description="Generalized rational blowdown toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="negative continued fraction of n^2/(nm-1) or y/x")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--y", type=int)
    p.add_argument("--x", type=int)

    p = sub.add_parser("chain", help="intersection form and boundary of a sphere chain")
    p.add_argument("--coeffs")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--areas")

    p = sub.add_parser("lens", help="normalize and compare lens spaces")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--p2", type=int)
    p.add_argument("--q2", type=int)
    p.add_argument("--mu1")
    p.add_argument("--mu2")
    p.add_argument("--unoriented", action="store_true")

    p = sub.add_parser("model", help="cone, chain, ball or nodal base diagram")
    p.add_argument("which", choices=["cone", "chain", "ball", "nodal"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--t")
    p.add_argument("--areas")
    p.add_argument("--collar")
    p.add_argument("--svg")

    p = sub.add_parser("fit", help="largest node parameter that fits inside the collar")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--areas")
    p.add_argument("--collar")

    p = sub.add_parser("blowdown", help="blow down a chain in a descriptor file")
    p.add_argument("--in", dest="path", required=True)
    p.add_argument("--chain", type=int, default=0)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--t")
    p.add_argument("--collar")
    p.add_argument("--allow-reversed", action="store_true")
    p.add_argument("--out")

    p = sub.add_parser("sweep", help="consistency checks over all coprime (n, m)")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--workers", type=int)

    p = sub.add_parser("render", help="re-render a saved model payload")
    p.add_argument("--in", dest="path", required=True)
    p.add_argument("--svg", required=True)
    return parser


def _emit(data) -> None:
    print(json.dumps(data, indent=2, ensure_ascii=False))


def run(args: argparse.Namespace, toolkit: BlowdownToolkit) -> int:
    settings = toolkit.settings
    if args.command == "expand":
        _emit(toolkit.expand(args.n, args.m, args.y, args.x))
    elif args.command == "chain":
        _emit(toolkit.chain(_convert(_ints, args.coeffs), args.n, args.m, _convert(_rationals, args.areas)))
    elif args.command == "lens":
        _emit(toolkit.lens(args.p, args.q, args.p2, args.q2, _convert(_vec, args.mu1), _convert(_vec, args.mu2),
                           oriented=not args.unoriented))
    elif args.command == "model":
        payload = toolkit.model(args.which, args.n, args.m, _convert(parse_rational, args.t),
                                _convert(_rationals, args.areas), _convert(parse_collar, args.collar))
        if args.svg:
            render_payload(payload, args.svg, settings.svg_size, settings.svg_margin)
        _emit(payload)
    elif args.command == "fit":
        _emit(toolkit.fit(args.n, args.m, _convert(_rationals, args.areas), _convert(parse_collar, args.collar)))
    elif args.command == "blowdown":
        _emit(toolkit.blowdown(args.path, args.chain, args.n, args.m, _convert(parse_rational, args.t),
                               _convert(parse_collar, args.collar), args.allow_reversed, args.out))
    elif args.command == "sweep":
        rows = toolkit.sweep(args.n_max, args.workers)
        for row in rows:
            print(json.dumps(row))
        print(json.dumps({"pairs": len(rows), "failed": sum(not r["ok"] for r in rows)}))
    elif args.command == "render":
        try:
            payload = json.loads(Path(args.path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise BlowdownError("BadDescriptor", f"cannot read model payload {args.path}: {e}")
        render_payload(payload, args.svg, settings.svg_size, settings.svg_margin)
        _emit({"svg": args.svg})
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        settings = load_settings()
        configure_logging(settings.log_level)
        args = parser.parse_args(argv)
        return run(args, get_toolkit())
    except BlowdownError as e:
        logger.debug("command failed", exc_info=True)
        print(json.dumps(e.to_dict()), file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
