"""Exact geometric kernel: points, segments, simple polygons, predicates.

Everything here works on exact rationals (`fractions.Fraction`).  The
polygon convention throughout the library is *closed*: boundary points
count as inside, and segments may slide along edges or graze vertices.
Polygons are counterclockwise with signed area > 0.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    ChordEndpointNotOnBoundary,
    ChordNotInterior,
    ConstructionFailure,
    DuplicateVertex,
    EndpointOutside,
    GeometryError,
    SelfIntersecting,
    TooFewVertices,
)
from .exact import as_scalar


class Location(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def scale(self, k: Fraction) -> "Point":
        return Point(self.x * k, self.y * k)

    def cross(self, other: "Point") -> Fraction:
        return self.x * other.y - self.y * other.x

    def dot(self, other: "Point") -> Fraction:
        return self.x * other.x + self.y * other.y

    def __repr__(self):
        return f"Point({self.x}, {self.y})"


def pt(x, y) -> Point:
    """Point from ints, decimal strings, or Fractions."""
    return Point(as_scalar(x), as_scalar(y))


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise GeometryError(f"degenerate segment at {self.a}")

    @property
    def vec(self) -> Point:
        return self.b - self.a

    def point_at(self, t: Fraction) -> Point:
        return self.a + self.vec.scale(t)

    def midpoint(self) -> Point:
        return self.point_at(Fraction(1, 2))

    def reversed(self) -> "Segment":
        return Segment(self.b, self.a)

    def param_of(self, p: Point) -> Fraction:
        """Parameter of a point known to lie on the supporting line."""
        v = self.vec
        if v.x != 0:
            return (p.x - self.a.x) / v.x
        return (p.y - self.a.y) / v.y


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the cross product (b-a) x (c-a): +1 left turn, -1 right, 0 collinear."""
    v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True iff p lies on the closed segment ab (endpoints included)."""
    if orient(a, b, p) != 0:
        return False
    return (
        min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def _bbox_disjoint(a1: Point, a2: Point, b1: Point, b2: Point) -> bool:
    return (
        max(a1.x, a2.x) < min(b1.x, b2.x)
        or max(b1.x, b2.x) < min(a1.x, a2.x)
        or max(a1.y, a2.y) < min(b1.y, b2.y)
        or max(b1.y, b2.y) < min(a1.y, a2.y)
    )


def segment_intersection(
    s1: Segment, s2: Segment
) -> Union[None, Point, Segment]:
    """Exact intersection of two closed segments.

    Returns None (disjoint), a Point (single contact, including touches),
    or a Segment (collinear overlap of positive length).
    """
    if _bbox_disjoint(s1.a, s1.b, s2.a, s2.b):
        return None
    r = s1.vec
    s = s2.vec
    denom = r.cross(s)
    qp = s2.a - s1.a
    if denom != 0:
        t = qp.cross(s) / denom
        u = qp.cross(r) / denom
        if 0 <= t <= 1 and 0 <= u <= 1:
            return s1.point_at(t)
        return None
    # Parallel.  Distinct lines cannot meet.
    if qp.cross(r) != 0:
        return None
    # Collinear: project s2's endpoints on s1's parameter axis.
    t0 = s1.param_of(s2.a)
    t1 = s1.param_of(s2.b)
    lo, hi = min(t0, t1), max(t0, t1)
    lo = max(lo, Fraction(0))
    hi = min(hi, Fraction(1))
    if lo > hi:
        return None
    if lo == hi:
        return s1.point_at(lo)
    return Segment(s1.point_at(lo), s1.point_at(hi))


def proper_crossing(s1: Segment, s2: Segment) -> bool:
    """True iff the segments cross transversally at a point interior to both."""
    if _bbox_disjoint(s1.a, s1.b, s2.a, s2.b):
        return False
    d1 = orient(s1.a, s1.b, s2.a)
    d2 = orient(s1.a, s1.b, s2.b)
    d3 = orient(s2.a, s2.b, s1.a)
    d4 = orient(s2.a, s2.b, s1.b)
    return d1 * d2 < 0 and d3 * d4 < 0


class Polygon:
    """Simple polygon, counterclockwise, closed region.

    The cheap constructor checks only local invariants (it is used for
    internally constructed faces whose simplicity follows from the
    construction); `validate_polygon` performs the full pairwise
    simplicity test and orientation normalization for untrusted input.
    """

    __slots__ = ("vertices", "n", "signed_area", "_edges", "_bbox")

    def __init__(self, vertices):
        verts = tuple(vertices)
        if len(verts) < 3:
            raise TooFewVertices(f"polygon needs >= 3 vertices, got {len(verts)}")
        for i, v in enumerate(verts):
            if v == verts[(i + 1) % len(verts)]:
                raise DuplicateVertex(f"consecutive duplicate vertex at index {i}: {v}")
        area2 = Fraction(0)
        for i, v in enumerate(verts):
            w = verts[(i + 1) % len(verts)]
            area2 += v.cross(w)
        if area2 <= 0:
            raise GeometryError(
                "polygon must be counterclockwise with positive area "
                f"(signed doubled area {area2})"
            )
        self.vertices = verts
        self.n = len(verts)
        self.signed_area = area2 / 2
        self._edges = None
        self._bbox = None

    @property
    def area(self) -> Fraction:
        return self.signed_area

    def edges(self):
        if self._edges is None:
            vs = self.vertices
            self._edges = tuple(
                Segment(vs[i], vs[(i + 1) % self.n]) for i in range(self.n)
            )
        return self._edges

    def bbox(self):
        if self._bbox is None:
            xs = [v.x for v in self.vertices]
            ys = [v.y for v in self.vertices]
            self._bbox = (min(xs), min(ys), max(xs), max(ys))
        return self._bbox

    def vertex(self, i: int) -> Point:
        return self.vertices[i % self.n]

    def is_reflex(self, i: int) -> bool:
        """Interior angle at vertex i greater than pi (ccw convention)."""
        a = self.vertex(i - 1)
        b = self.vertex(i)
        c = self.vertex(i + 1)
        return orient(a, b, c) < 0

    def contains(self, p: Point) -> Location:
        return point_in_polygon(self, p)

    def boundary_position(self, p: Point):
        """(edge index, parameter in [0,1)) if p lies on the boundary, else None."""
        for i, e in enumerate(self.edges()):
            if on_segment(p, e.a, e.b):
                t = e.param_of(p)
                if t == 1:
                    return ((i + 1) % self.n, Fraction(0))
                return (i, t)
        return None

    def cyclic_coordinate(self, pos) -> Fraction:
        """Map a boundary position to a scalar in [0, n) for cyclic ordering."""
        return Fraction(pos[0]) + pos[1]

    def __eq__(self, other):
        return isinstance(other, Polygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"Polygon(n={self.n}, area={self.signed_area})"


def validate_polygon(points) -> Polygon:
    """Full validation: simplicity by pairwise edge tests, ccw normalization.

    Accepts any point sequence (clockwise input is reversed).  Raises
    TooFewVertices, DuplicateVertex, or SelfIntersecting.
    """
    verts = [p if isinstance(p, Point) else pt(*p) for p in points]
    if len(verts) < 3:
        raise TooFewVertices(f"polygon needs >= 3 vertices, got {len(verts)}")
    n = len(verts)
    for i in range(n):
        if verts[i] == verts[(i + 1) % n]:
            raise DuplicateVertex(
                f"consecutive duplicate vertex at index {i}: {verts[i]}"
            )
    area2 = Fraction(0)
    for i in range(n):
        area2 += verts[i].cross(verts[(i + 1) % n])
    if area2 == 0:
        raise SelfIntersecting("polygon has zero area")
    if area2 < 0:
        verts.reverse()

    edges = [(verts[i], verts[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a1, a2 = edges[i]
            b1, b2 = edges[j]
            inter = segment_intersection(Segment(a1, a2), Segment(b1, b2))
            if inter is None:
                continue
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            if adjacent:
                shared = a2 if j == i + 1 else a1
                if not (isinstance(inter, Point) and inter == shared):
                    raise SelfIntersecting(
                        f"adjacent edges {i} and {j} overlap", (a1, a2), (b1, b2)
                    )
            else:
                raise SelfIntersecting(
                    f"edges {i} and {j} intersect", (a1, a2), (b1, b2)
                )
    return Polygon(verts)


def point_in_polygon(poly: Polygon, p: Point) -> Location:
    """Exact point classification by crossing number.

    Boundary is detected exactly; the crossing walk uses the half-open
    vertex rule so each crossing is counted once.
    """
    bx0, by0, bx1, by1 = poly.bbox()
    if p.x < bx0 or p.x > bx1 or p.y < by0 or p.y > by1:
        return Location.EXTERIOR
    inside = False
    vs = poly.vertices
    n = poly.n
    for i in range(n):
        a = vs[i]
        b = vs[(i + 1) % n]
        if on_segment(p, a, b):
            return Location.BOUNDARY
        if (a.y > p.y) != (b.y > p.y):
            side = orient(a, b, p)
            if b.y > a.y:
                if side > 0:
                    inside = not inside
            else:
                if side < 0:
                    inside = not inside
    return Location.INTERIOR if inside else Location.EXTERIOR


def boundary_contact_params(poly: Polygon, seg: Segment):
    """Sorted, deduplicated parameters t on `seg` where it touches the boundary.

    Collinear overlaps contribute both overlap endpoints.
    """
    params = set()
    for e in poly.edges():
        inter = segment_intersection(seg, e)
        if inter is None:
            continue
        if isinstance(inter, Point):
            params.add(seg.param_of(inter))
        else:
            params.add(seg.param_of(inter.a))
            params.add(seg.param_of(inter.b))
    return sorted(params)


def segment_in_polygon(poly: Polygon, seg: Segment) -> bool:
    """True iff every point of the closed segment lies in the closed polygon.

    Proper crossings of the boundary are forbidden; collinear sliding and
    grazing touches are allowed.  Decided by classifying the midpoint of
    every subsegment induced by boundary contacts.
    """
    loc_a = point_in_polygon(poly, seg.a)
    loc_b = point_in_polygon(poly, seg.b)
    if loc_a is Location.EXTERIOR or loc_b is Location.EXTERIOR:
        raise EndpointOutside(f"segment endpoint outside polygon: {seg}")
    for e in poly.edges():
        if proper_crossing(seg, e):
            return False
    cuts = boundary_contact_params(poly, seg)
    checkpoints = sorted(set(cuts) | {Fraction(0), Fraction(1)})
    for t0, t1 in zip(checkpoints, checkpoints[1:]):
        mid = seg.point_at((t0 + t1) / 2)
        if point_in_polygon(poly, mid) is Location.EXTERIOR:
            return False
    return True


def _collect_between(poly: Polygon, pos_a, pos_b):
    """Vertices strictly between two boundary positions, walking ccw."""
    n = poly.n
    ca = poly.cyclic_coordinate(pos_a)
    cb = poly.cyclic_coordinate(pos_b)
    span = (cb - ca) % n
    out = []
    j = pos_a[0] + 1
    for _ in range(n):
        rel = (Fraction(j % n) - ca) % n
        if rel == 0 or rel >= span:
            break
        out.append(poly.vertex(j))
        j += 1
    return out


def split_by_chord(poly: Polygon, chord: Segment):
    """Split a polygon along a chord into its two sides.

    The chord endpoints must lie on the boundary (vertices or edge
    interiors) and the open chord strictly inside.  Returns (side
    containing the boundary walk a->b, side b->a); both ccw, sharing the
    chord as an edge.
    """
    pos_a = poly.boundary_position(chord.a)
    pos_b = poly.boundary_position(chord.b)
    if pos_a is None or pos_b is None:
        raise ChordEndpointNotOnBoundary(f"chord endpoint not on boundary: {chord}")
    contacts = boundary_contact_params(poly, chord)
    if any(0 < t < 1 for t in contacts):
        raise ChordNotInterior(
            f"chord touches the boundary at a third point: {chord}"
        )
    if point_in_polygon(poly, chord.midpoint()) is not Location.INTERIOR:
        raise ChordNotInterior(f"chord interior is not strictly inside: {chord}")

    side1 = [chord.a] + _collect_between(poly, pos_a, pos_b) + [chord.b]
    side2 = [chord.b] + _collect_between(poly, pos_b, pos_a) + [chord.a]
    try:
        p1 = Polygon(side1)
        p2 = Polygon(side2)
    except GeometryError as exc:
        raise ConstructionFailure(f"chord split produced a bad side: {exc}") from exc
    if p1.area + p2.area != poly.area:
        raise ConstructionFailure(
            f"chord split lost area: {p1.area} + {p2.area} != {poly.area}"
        )
    return p1, p2


def simplify_collinear(poly: Polygon) -> Polygon:
    """Drop vertices that are collinear with their neighbors."""
    vs = list(poly.vertices)
    changed = True
    while changed and len(vs) > 3:
        changed = False
        for i in range(len(vs)):
            a = vs[(i - 1) % len(vs)]
            b = vs[i]
            c = vs[(i + 1) % len(vs)]
            if orient(a, b, c) == 0:
                vs.pop(i)
                changed = True
                break
    return Polygon(vs)


def canonical_vertices(poly: Polygon):
    """Vertex tuple rotated to start at the lexicographically smallest point."""
    vs = poly.vertices
    k = min(range(len(vs)), key=lambda i: (vs[i].x, vs[i].y))
    return vs[k:] + vs[:k]


def same_region(p1: Polygon, p2: Polygon) -> bool:
    """Exact region equality, ignoring collinear subdivision and rotation."""
    return canonical_vertices(simplify_collinear(p1)) == canonical_vertices(
        simplify_collinear(p2)
    )
