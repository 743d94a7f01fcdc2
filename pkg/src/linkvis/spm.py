"""Shortest path map: partition of a polygon into faces of constant link
distance from a source point.

Depth 1 is the visibility polygon of the source; each window of a face
spawns a child face, the weak visibility region of that window inside its
pocket.  Faces tile the polygon exactly (checked at build time).
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ConstructionFailure, PointOutside, SegmentOutside
from .geometry import (
    Location,
    Point,
    Polygon,
    Segment,
    on_segment,
    point_in_polygon,
    segment_in_polygon,
    segment_intersection,
)
from .visibility import (
    Window,
    _visibility_structure,
    _weak_visibility_structure,
)


@dataclass(frozen=True)
class SpmFace:
    id: int
    polygon: Polygon
    depth: int
    parent_window: Optional[Window]
    parent_face: Optional[int]


@dataclass(frozen=True)
class Spm:
    polygon: Polygon
    source: Point
    faces: tuple

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @property
    def max_depth(self) -> int:
        return max(f.depth for f in self.faces)

    def windows(self):
        """All partition chords, i.e. every face's parent window."""
        return [f.parent_window for f in self.faces if f.parent_window is not None]


def build_spm(poly: Polygon, x: Point) -> Spm:
    """Breadth-first window partition from the source point x."""
    if point_in_polygon(poly, x) is Location.EXTERIOR:
        raise PointOutside(f"source {x} is outside the polygon")
    faces = []
    root = _visibility_structure(poly, x)
    faces.append(SpmFace(id=0, polygon=root.region, depth=1,
                         parent_window=None, parent_face=None))
    queue = [(0, pk) for pk in root.pockets()]
    depth_cap = poly.n + 4
    while queue:
        parent_id, pocket = queue.pop(0)
        parent = faces[parent_id]
        if parent.depth + 1 > depth_cap:
            raise ConstructionFailure("window partition exceeded depth cap")
        st = _weak_visibility_structure(pocket.region, pocket.window.chord)
        fid = len(faces)
        faces.append(SpmFace(id=fid, polygon=st.region, depth=parent.depth + 1,
                             parent_window=pocket.window, parent_face=parent_id))
        for pk in st.pockets():
            queue.append((fid, pk))
    spm = Spm(polygon=poly, source=x, faces=tuple(faces))
    total = sum(f.polygon.area for f in faces)
    if total != poly.area:
        raise ConstructionFailure(
            f"SPM faces do not tile the polygon ({total} != {poly.area})"
        )
    return spm


def locate(spm: Spm, p: Point) -> int:
    """Id of the face whose closed polygon contains p.

    Ties on shared boundaries resolve to the smallest depth, then the
    smallest id; faces are stored in breadth-first order so the first hit
    is the answer.
    """
    if point_in_polygon(spm.polygon, p) is Location.EXTERIOR:
        raise PointOutside(f"{p} is outside the polygon")
    for f in spm.faces:
        if point_in_polygon(f.polygon, p) is not Location.EXTERIOR:
            return f.id
    raise ConstructionFailure(f"{p} is inside the polygon but in no SPM face")


def link_distance(spm: Spm, p: Point) -> int:
    """Minimum number of segments of a polygonal path from the source to p.

    By convention the distance from the source to itself is 0.
    """
    if p == spm.source:
        return 0
    return spm.faces[locate(spm, p)].depth


def _bend_on_window(poly: Polygon, chord: Segment, from_pt: Point) -> Point:
    """A point of `chord` visible from `from_pt`, preferring the midpoint of
    the largest visible sub-interval."""
    events = {Fraction(0), Fraction(1)}
    ev = chord.vec
    for w in poly.vertices:
        if w == from_pt:
            continue
        dv = w - from_pt
        denom = ev.cross(dv)
        if denom == 0:
            continue
        lam = (from_pt - chord.a).cross(dv) / denom
        if 0 < lam < 1:
            events.add(lam)
    events = sorted(events)
    best = None
    for lo, hi in zip(events, events[1:]):
        mid = chord.point_at((lo + hi) / 2)
        if mid != from_pt and segment_in_polygon(poly, Segment(mid, from_pt)):
            if best is None or hi - lo > best[0]:
                best = (hi - lo, mid)
    if best is not None:
        return best[1]
    for lam in events:
        c = chord.point_at(lam)
        if c != from_pt and segment_in_polygon(poly, Segment(c, from_pt)):
            return c
    raise ConstructionFailure(
        f"no point of window {chord} is visible from {from_pt}"
    )


def min_link_path(spm: Spm, p: Point):
    """A minimum link polyline from the source to p, as a list of points.

    Bends are placed on successive parent windows; the segment count
    equals link_distance(spm, p).
    """
    if p == spm.source:
        return [p]
    face = spm.faces[locate(spm, p)]
    rev = [p]
    cur = p
    while face.depth > 1:
        z = _bend_on_window(spm.polygon, face.parent_window.chord, cur)
        if z == cur:
            raise ConstructionFailure(
                f"bend collapsed onto the current point at {cur}"
            )
        rev.append(z)
        cur = z
        face = spm.faces[face.parent_face]
    rev.append(spm.source)
    return list(reversed(rev))


def faces_crossed(spm: Spm, seg: Segment) -> int:
    """Number of faces whose closed region the segment intersects."""
    for p in (seg.a, seg.b):
        if point_in_polygon(spm.polygon, p) is Location.EXTERIOR:
            raise SegmentOutside(f"segment endpoint {p} outside the polygon")
    if not segment_in_polygon(spm.polygon, seg):
        raise SegmentOutside(f"segment {seg} leaves the polygon")
    count = 0
    for f in spm.faces:
        if _segment_meets_polygon(f.polygon, seg):
            count += 1
    return count


def _segment_meets_polygon(poly: Polygon, seg: Segment) -> bool:
    if point_in_polygon(poly, seg.a) is not Location.EXTERIOR:
        return True
    if point_in_polygon(poly, seg.b) is not Location.EXTERIOR:
        return True
    for e in poly.edges():
        if segment_intersection(seg, e) is not None:
            return True
    return False
