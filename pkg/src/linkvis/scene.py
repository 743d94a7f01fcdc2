"""Scene files: the JSON interchange format for polygon + query points.

Coordinates are JSON numbers or decimal strings with at most 12
fractional digits; they are parsed to exact rationals without ever
constructing a float (json's parse_float hook hands us the raw text).
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import GeometryError, ParseError
from .exact import format_exact_decimal, parse_decimal
from .geometry import Location, Point, Polygon, point_in_polygon, validate_polygon


@dataclass(frozen=True)
class Scene:
    polygon: Polygon
    s: Point
    t: Point
    q: Optional[Point]
    name: str = ""


def _coord(value, what):
    if isinstance(value, bool):
        raise ParseError(f"bad coordinate type in {what}: bool")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return parse_decimal(value)
        except ValueError as exc:
            raise ParseError(f"bad coordinate in {what}: {exc}") from exc
    raise ParseError(f"bad coordinate type in {what}: {type(value).__name__}")


def _point(value, what) -> Point:
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError(f"{what} must be a [x, y] pair")
    return Point(_coord(value[0], what), _coord(value[1], what))


def parse_scene(text: str) -> Scene:
    """Parse and geometrically validate a scene document."""
    try:
        doc = json.loads(text, parse_float=parse_decimal)
    except (json.JSONDecodeError, ValueError) as exc:
        raise ParseError(f"malformed scene JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("scene document must be a JSON object")
    unknown = set(doc) - {"name", "polygon", "s", "t", "q"}
    if unknown:
        raise ParseError(f"unknown scene fields: {sorted(unknown)}")
    for field in ("polygon", "s", "t"):
        if field not in doc:
            raise ParseError(f"scene is missing required field {field!r}")
    raw_poly = doc["polygon"]
    if not isinstance(raw_poly, list):
        raise ParseError("polygon must be a list of [x, y] pairs")
    points = [_point(v, f"polygon[{i}]") for i, v in enumerate(raw_poly)]
    polygon = validate_polygon(points)

    name = doc.get("name", "")
    if not isinstance(name, str):
        raise ParseError("name must be a string")
    s = _point(doc["s"], "s")
    t = _point(doc["t"], "t")
    q = _point(doc["q"], "q") if "q" in doc else None
    for label, p in (("s", s), ("t", t), ("q", q)):
        if p is not None and point_in_polygon(polygon, p) is Location.EXTERIOR:
            raise GeometryError(f"point {label} = ({p.x}, {p.y}) lies outside "
                                f"the polygon")
    return Scene(polygon=polygon, s=s, t=t, q=q, name=name)


def serialize_scene(scene: Scene) -> str:
    """Exact round-trip serialization (decimal strings, no rounding)."""
    def coord_pair(p: Point):
        return [format_exact_decimal(p.x), format_exact_decimal(p.y)]

    doc = {
        "name": scene.name,
        "polygon": [coord_pair(v) for v in scene.polygon.vertices],
        "s": coord_pair(scene.s),
        "t": coord_pair(scene.t),
    }
    if scene.q is not None:
        doc["q"] = coord_pair(scene.q)
    return json.dumps(doc, indent=2, sort_keys=True)
