"""Command-line interface.

All results go to stdout as JSON with coordinates rendered as decimal
strings (half-even, 9 fractional digits; display only, internals stay
exact).  Exit codes: 0 success, 2 parse/usage error, 3 geometry error,
4 internal consistency failure.
"""

import argparse
import json
import sys
from fractions import Fraction

from .errors import ConstructionFailure, GeometryError, ParseError
from .exact import format_fixed, parse_decimal
from .geometry import Location, point_in_polygon
from .overlay import build_cells, min_cell
from .planner import Case, classify, q_visible_path, verify
from .oracle import oracle_link_distance, oracle_q_visible_distance
from .scene import parse_scene
from .spm import build_spm, min_link_path
from .render import render_scene

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_GEOMETRY = 3
EXIT_INTERNAL = 4


def _coords(p):
    return [format_fixed(p.x), format_fixed(p.y)]


def _poly_coords(poly):
    return [_coords(v) for v in poly.vertices]


def _load_scene(path, need_q=False):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read scene file {path}: {exc}") from exc
    scene = parse_scene(text)
    if need_q and scene.q is None:
        raise ParseError(f"scene {path} has no point q (required here)")
    return scene


def _emit(doc):
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def cmd_check(args):
    scene = _load_scene(args.scene)
    doc = {
        "command": "check",
        "name": scene.name,
        "n": scene.polygon.n,
        "area": format_fixed(scene.polygon.area),
        "points": {},
    }
    for label, p in (("s", scene.s), ("t", scene.t), ("q", scene.q)):
        if p is None:
            continue
        doc["points"][label] = {
            "coords": _coords(p),
            "location": point_in_polygon(scene.polygon, p).value,
        }
    _emit(doc)
    return EXIT_OK


def cmd_linkpath(args):
    scene = _load_scene(args.scene)
    spm = build_spm(scene.polygon, scene.s)
    pts = min_link_path(spm, scene.t)
    _emit({
        "command": "linkpath",
        "name": scene.name,
        "distance": len(pts) - 1,
        "path": [_coords(p) for p in pts],
    })
    return EXIT_OK


def cmd_qpath(args):
    scene = _load_scene(args.scene, need_q=True)
    result = q_visible_path(scene.polygon, scene.s, scene.t, scene.q)
    if not verify(scene.polygon, scene.q, result):
        raise ConstructionFailure("planner result failed self-verification")
    _emit({
        "command": "qpath",
        "name": scene.name,
        "case": result.case.value,
        "distance": result.distance,
        "path": [_coords(p) for p in result.path.vertices],
        "witness": _coords(result.witness),
        "cell_value": result.cell_value,
    })
    return EXIT_OK


def cmd_spm(args):
    scene = _load_scene(args.scene, need_q=args.source == "q")
    source = {"s": scene.s, "t": scene.t, "q": scene.q}[args.source]
    spm = build_spm(scene.polygon, source)
    faces = []
    for f in spm.faces:
        faces.append({
            "id": f.id,
            "depth": f.depth,
            "parent_face": f.parent_face,
            "window": (
                None if f.parent_window is None
                else [_coords(f.parent_window.anchor),
                      _coords(f.parent_window.far_end)]
            ),
            "polygon": _poly_coords(f.polygon),
        })
    _emit({
        "command": "spm",
        "name": scene.name,
        "source": args.source,
        "face_count": spm.face_count,
        "max_depth": spm.max_depth,
        "faces": faces,
    })
    return EXIT_OK


def cmd_overlay(args):
    scene = _load_scene(args.scene, need_q=True)
    case = classify(scene.polygon, scene.s, scene.t, scene.q)
    doc = {
        "command": "overlay",
        "name": scene.name,
        "case": case.value,
        "applicable": case is Case.SAME_POCKET,
    }
    if case is Case.SAME_POCKET:
        from .planner import _q_side_subpolygon
        from .visibility import _visibility_structure

        st = _visibility_structure(scene.polygon, scene.q)
        pocket = next(
            pk for pk in st.pockets()
            if point_in_polygon(pk.region, scene.s) is not Location.EXTERIOR
        )
        p_side = _q_side_subpolygon(scene.polygon, pocket.window.chord,
                                    scene.s, scene.q)
        spm_s = build_spm(scene.polygon, scene.s)
        spm_t = build_spm(scene.polygon, scene.t)
        complex_ = build_cells(spm_s, spm_t, p_side)
        cid, value = min_cell(complex_)
        k = complex_.k1 + complex_.k2
        doc.update({
            "k1": complex_.k1,
            "k2": complex_.k2,
            "crossing_count": complex_.crossing_count,
            "cell_count": len(complex_.cells),
            "euler_bound": 1 + k + complex_.crossing_count,
            "paper_cell_bound": format_fixed(Fraction(9, 4) * k, 2),
            "min_cell": {"id": cid, "value": value},
            "cells": [
                {
                    "id": c.id,
                    "s_depth": c.s_depth,
                    "t_depth": c.t_depth,
                    "value": c.value,
                    "polygon": _poly_coords(c.polygon),
                }
                for c in complex_.cells
            ],
        })
    _emit(doc)
    return EXIT_OK


def cmd_oracle(args):
    scene = _load_scene(args.scene, need_q=args.q_visible)
    try:
        resolution = parse_decimal(args.resolution)
    except ValueError as exc:
        raise ParseError(f"bad resolution: {exc}") from exc
    if resolution <= 0:
        raise ParseError("resolution must be positive")
    if args.q_visible:
        d = oracle_q_visible_distance(scene.polygon, scene.s, scene.t,
                                      scene.q, resolution)
    else:
        d = oracle_link_distance(scene.polygon, scene.s, scene.t, resolution)
    reachable = d != float("inf")
    _emit({
        "command": "oracle",
        "name": scene.name,
        "resolution": args.resolution,
        "q_visible": bool(args.q_visible),
        "distance": int(d) if reachable else None,
        "reachable": reachable,
    })
    return EXIT_OK


def cmd_render(args):
    layers = [l.strip() for l in args.layers.split(",") if l.strip()]
    known = {"vis", "spm-s", "spm-t", "spm-q", "cells", "path"}
    bad = [l for l in layers if l not in known]
    if bad:
        raise ParseError(f"unknown layers: {bad}; known: {sorted(known)}")
    need_q = bool({"vis", "cells", "path", "spm-q"} & set(layers))
    scene = _load_scene(args.scene, need_q=need_q)
    svg = render_scene(scene, layers)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    _emit({
        "command": "render",
        "name": scene.name,
        "out": args.out,
        "layers": layers,
        "bytes": len(svg.encode("utf-8")),
    })
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="linkvis",
        description="Minimum link paths in simple polygons with a "
                    "point-visibility constraint.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a scene file")
    p.add_argument("scene")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("linkpath", help="unconstrained minimum link path s->t")
    p.add_argument("scene")
    p.set_defaults(func=cmd_linkpath)

    p = sub.add_parser("qpath", help="minimum link path s->t that sees q")
    p.add_argument("scene")
    p.set_defaults(func=cmd_qpath)

    p = sub.add_parser("spm", help="shortest path map from a source point")
    p.add_argument("scene")
    p.add_argument("--source", choices=["s", "t", "q"], default="s")
    p.set_defaults(func=cmd_spm)

    p = sub.add_parser("overlay", help="cell complex of the same-pocket case")
    p.add_argument("scene")
    p.set_defaults(func=cmd_overlay)

    p = sub.add_parser("oracle", help="brute-force grid BFS distance")
    p.add_argument("scene")
    p.add_argument("--resolution", required=True)
    p.add_argument("--q-visible", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("render", help="render scene layers to an SVG file")
    p.add_argument("scene")
    p.add_argument("--layers", default="vis,path")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GeometryError as exc:
        print(f"geometry error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except ConstructionFailure as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
