"""Overlay of two shortest path maps inside a subpolygon.

The subdivision is built by inserting the window chords of both maps one
at a time, splitting cells at exact intersection points; every cell then
gets the pair of link-distance labels of a representative interior point.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConstructionFailure, DegenerateCell
from .geometry import (
    Location,
    Point,
    Polygon,
    Segment,
    boundary_contact_params,
    orient,
    point_in_polygon,
    split_by_chord,
)
from .spm import Spm, locate


@dataclass(frozen=True)
class Cell:
    id: int
    polygon: Polygon
    s_depth: int
    t_depth: int

    @property
    def value(self) -> int:
        return self.s_depth + self.t_depth


@dataclass(frozen=True)
class CellComplex:
    p: Polygon
    cells: tuple
    k1: int
    k2: int
    crossing_count: int
    crossings_per_window: tuple  # ((chord, count) per window inside p)


def triangulate(poly: Polygon):
    """Ear-clipping triangulation; collinear vertices are dropped as they
    are met.  Returns a list of ccw triangles tiling the polygon."""
    vs = list(poly.vertices)
    out = []
    guard = 0
    while len(vs) > 3:
        guard += 1
        if guard > 2 * poly.n * poly.n:
            raise ConstructionFailure("ear clipping failed to make progress")
        m = len(vs)
        clipped = False
        for i in range(m):
            a, b, c = vs[i - 1], vs[i], vs[(i + 1) % m]
            o = orient(a, b, c)
            if o == 0:
                vs.pop(i)
                clipped = True
                break
            if o < 0:
                continue
            if any(
                _in_closed_triangle(w, a, b, c)
                for w in vs
                if w not in (a, b, c)
            ):
                continue
            out.append((a, b, c))
            vs.pop(i)
            clipped = True
            break
        if not clipped:
            raise ConstructionFailure("no ear found in simple polygon")
    if orient(*vs) > 0:
        out.append(tuple(vs))
    if not out:
        raise ConstructionFailure("triangulation produced no triangles")
    return out


def _in_closed_triangle(p, a, b, c):
    return orient(a, b, p) >= 0 and orient(b, c, p) >= 0 and orient(c, a, p) >= 0


def representative_point(poly: Polygon) -> Point:
    """A point strictly interior to the polygon: the centroid of the
    largest triangle of an ear-clipping triangulation."""
    if poly.area == 0:
        raise DegenerateCell("cell has zero area")
    tris = triangulate(poly)
    best = None
    for a, b, c in tris:
        area2 = (b - a).cross(c - a)
        if best is None or area2 > best[0]:
            best = (area2, (a, b, c))
    a, b, c = best[1]
    third = Fraction(1, 3)
    return Point((a.x + b.x + c.x) * third, (a.y + b.y + c.y) * third)


def _split_once(cell: Polygon, seg: Segment):
    """Split the cell along the first subsegment of `seg` that crosses its
    interior; None if `seg` does not cut the cell."""
    cuts = sorted(
        set(boundary_contact_params(cell, seg)) | {Fraction(0), Fraction(1)}
    )
    for t0, t1 in zip(cuts, cuts[1:]):
        mid = seg.point_at((t0 + t1) / 2)
        if point_in_polygon(cell, mid) is not Location.INTERIOR:
            continue
        p0 = seg.point_at(t0)
        p1 = seg.point_at(t1)
        if cell.boundary_position(p0) is None or cell.boundary_position(p1) is None:
            raise ConstructionFailure(
                f"chord piece {p0}-{p1} dangles inside a cell"
            )
        return split_by_chord(cell, Segment(p0, p1))
    return None


def insert_chord(cells, seg: Segment):
    """Insert a chord into a subdivision, splitting every cell it crosses."""
    out = []
    queue = list(cells)
    while queue:
        cell = queue.pop(0)
        pieces = _split_once(cell, seg)
        if pieces is None:
            out.append(cell)
        else:
            queue.extend(pieces)
    return out


def _chord_enters(region: Polygon, seg: Segment) -> bool:
    cuts = sorted(
        set(boundary_contact_params(region, seg)) | {Fraction(0), Fraction(1)}
    )
    for t0, t1 in zip(cuts, cuts[1:]):
        mid = seg.point_at((t0 + t1) / 2)
        if point_in_polygon(region, mid) is Location.INTERIOR:
            return True
    return False


def clip_to_subpolygon(spm: Spm, p: Polygon):
    """Pieces of every SPM face inside p, with inherited depths."""
    if p.area == spm.polygon.area:
        return [(f.polygon, f.depth) for f in spm.faces]
    chords = [
        e for e in p.edges()
        if point_in_polygon(spm.polygon, e.midpoint()) is Location.INTERIOR
    ]
    out = []
    for f in spm.faces:
        pieces = [f.polygon]
        for ch in chords:
            pieces = insert_chord(pieces, ch)
        for piece in pieces:
            rep = representative_point(piece)
            if point_in_polygon(p, rep) is Location.INTERIOR:
                out.append((piece, f.depth))
    total = sum(piece.area for piece, _ in out)
    if total != p.area:
        raise ConstructionFailure(
            f"clipped faces do not tile the subpolygon ({total} != {p.area})"
        )
    return out


def build_cells(spm_s: Spm, spm_t: Spm, p: Polygon) -> CellComplex:
    """Overlay both maps' windows inside p and label the resulting cells."""
    chords_s = [w.chord for w in spm_s.windows()]
    chords_t = [w.chord for w in spm_t.windows()]
    inside_s = [ch for ch in chords_s if _chord_enters(p, ch)]
    inside_t = [ch for ch in chords_t if _chord_enters(p, ch)]

    polys = [p]
    for ch in inside_s + inside_t:
        polys = insert_chord(polys, ch)

    cells = []
    for i, poly in enumerate(polys):
        rep = representative_point(poly)
        sd = spm_s.faces[locate(spm_s, rep)].depth
        td = spm_t.faces[locate(spm_t, rep)].depth
        cells.append(Cell(id=i, polygon=poly, s_depth=sd, t_depth=td))

    crossing_count = 0
    per_window = {id(ch): 0 for ch in inside_s + inside_t}
    for cs in inside_s:
        for ct in inside_t:
            pt = _proper_interior_crossing(cs, ct)
            if pt is not None and point_in_polygon(p, pt) is Location.INTERIOR:
                crossing_count += 1
                per_window[id(cs)] += 1
                per_window[id(ct)] += 1

    total = sum(c.polygon.area for c in cells)
    if total != p.area:
        raise ConstructionFailure(
            f"cells do not tile the subpolygon ({total} != {p.area})"
        )
    crossings = tuple(
        (ch, per_window[id(ch)]) for ch in inside_s + inside_t
    )
    return CellComplex(
        p=p,
        cells=tuple(cells),
        k1=len(inside_s),
        k2=len(inside_t),
        crossing_count=crossing_count,
        crossings_per_window=crossings,
    )


def _proper_interior_crossing(s1: Segment, s2: Segment):
    """Crossing point strictly interior to both segments, else None."""
    r = s1.vec
    s = s2.vec
    denom = r.cross(s)
    if denom == 0:
        return None
    qp = s2.a - s1.a
    t = qp.cross(s) / denom
    u = qp.cross(r) / denom
    if 0 < t < 1 and 0 < u < 1:
        return s1.point_at(t)
    return None


def min_cell(complex_: CellComplex):
    """(cell id, value) of the minimum-value cell; ties go to the smallest id."""
    if not complex_.cells:
        raise ConstructionFailure("empty cell complex")
    best = min(complex_.cells, key=lambda c: (c.value, c.id))
    return best.id, best.value
