"""The q-visible minimum link path planner.

Given s, t, q inside a simple polygon, produce a minimum link path from s
to t that sees q from at least one of its points.  Cases:

  * one endpoint sees q: any minimum link path works;
  * s and t in different pockets of q: a minimum link path must cross
    the visibility region of q (checked, not assumed);
  * s and t in the same pocket: overlay the two shortest path maps inside
    the subpolygon p on q's side of the separating window, pick the cell
    minimizing the combined distance, and route through it.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ConstructionFailure, PointOutside
from .geometry import (
    Location,
    Point,
    Polygon,
    Segment,
    boundary_contact_params,
    on_segment,
    point_in_polygon,
    segment_in_polygon,
    split_by_chord,
)
from .overlay import build_cells, min_cell, representative_point
from .spm import build_spm, link_distance, min_link_path
from .visibility import _visibility_structure, sees


class Case(enum.Enum):
    ENDPOINT_SEES_Q = "EndpointSeesQ"
    DIFFERENT_POCKETS = "DifferentPockets"
    SAME_POCKET = "SamePocket"


@dataclass(frozen=True)
class Path:
    vertices: tuple

    def __post_init__(self):
        if not self.vertices:
            raise ConstructionFailure("empty path")
        for u, v in zip(self.vertices, self.vertices[1:]):
            if u == v:
                raise ConstructionFailure(f"repeated path vertex {u}")

    @property
    def segment_count(self) -> int:
        return len(self.vertices) - 1

    def segments(self):
        return [
            Segment(u, v) for u, v in zip(self.vertices, self.vertices[1:])
        ]


@dataclass(frozen=True)
class QVisibleResult:
    case: Case
    distance: int
    path: Path
    witness: Point
    cell_value: Optional[int] = None


def _require_inside(poly: Polygon, **points):
    for name, p in points.items():
        if point_in_polygon(poly, p) is Location.EXTERIOR:
            raise PointOutside(f"{name} = {p} is outside the polygon")


def _classify_full(poly: Polygon, s: Point, t: Point, q: Point):
    _require_inside(poly, s=s, t=t, q=q)
    if sees(poly, s, q) or sees(poly, t, q):
        return Case.ENDPOINT_SEES_Q, None, None, None
    vq = _visibility_structure(poly, q)
    pks = vq.pockets()

    def pocket_of(p, name):
        hits = [
            pk for pk in pks
            if point_in_polygon(pk.region, p) is not Location.EXTERIOR
        ]
        if len(hits) != 1:
            raise ConstructionFailure(
                f"{name} lies in {len(hits)} pockets of q; expected exactly 1"
            )
        return hits[0]

    pk_s = pocket_of(s, "s")
    pk_t = pocket_of(t, "t")
    if pk_s.id == pk_t.id:
        return Case.SAME_POCKET, vq, pk_s, pk_t
    return Case.DIFFERENT_POCKETS, vq, pk_s, pk_t


def classify(poly: Polygon, s: Point, t: Point, q: Point) -> Case:
    """Which of the three planner cases applies."""
    return _classify_full(poly, s, t, q)[0]


def _first_point_in_region(path: Path, region: Polygon) -> Optional[Point]:
    """Earliest point of the polyline lying in the closed region."""
    for seg in path.segments():
        if point_in_polygon(region, seg.a) is not Location.EXTERIOR:
            return seg.a
        cuts = boundary_contact_params(region, seg)
        if cuts:
            return seg.point_at(cuts[0])
    last = path.vertices[-1]
    if point_in_polygon(region, last) is not Location.EXTERIOR:
        return last
    return None


def _q_side_subpolygon(poly: Polygon, chord: Segment, s: Point, q: Point):
    side_ab, side_ba = split_by_chord(poly, chord)
    for side in (side_ab, side_ba):
        if point_in_polygon(side, s) is Location.EXTERIOR:
            if point_in_polygon(side, q) is Location.EXTERIOR:
                raise ConstructionFailure(
                    "neither s nor q on the chosen side of the window"
                )
            return side
    raise ConstructionFailure("s is on both sides of the separating window")


def q_visible_path(poly: Polygon, s: Point, t: Point, q: Point) -> QVisibleResult:
    """A minimum link path from s to t that sees q, with its link distance."""
    _require_inside(poly, s=s, t=t, q=q)

    if s == t:
        if sees(poly, s, q):
            return QVisibleResult(
                case=Case.ENDPOINT_SEES_Q, distance=0,
                path=Path((s,)), witness=s,
            )
        return _same_pocket_route(poly, s, t, q)

    case, vq, pk_s, pk_t = _classify_full(poly, s, t, q)

    if case is Case.ENDPOINT_SEES_Q:
        spm_s = build_spm(poly, s)
        pts = min_link_path(spm_s, t)
        witness = s if sees(poly, s, q) else t
        return QVisibleResult(
            case=case, distance=len(pts) - 1, path=Path(tuple(pts)),
            witness=witness,
        )

    if case is Case.DIFFERENT_POCKETS:
        spm_s = build_spm(poly, s)
        pts = min_link_path(spm_s, t)
        path = Path(tuple(pts))
        witness = _first_point_in_region(path, vq.region)
        if witness is None:
            raise ConstructionFailure(
                "path between different pockets does not cross V(q)"
            )
        return QVisibleResult(
            case=case, distance=path.segment_count, path=path, witness=witness,
        )

    return _same_pocket_route(poly, s, t, q)


def _same_pocket_route(poly: Polygon, s: Point, t: Point, q: Point):
    vq = _visibility_structure(poly, q)
    pks = vq.pockets()
    hits = [
        pk for pk in pks
        if point_in_polygon(pk.region, s) is not Location.EXTERIOR
    ]
    if len(hits) != 1:
        raise ConstructionFailure("s is not in exactly one pocket of q")
    window = hits[0].window

    p_side = _q_side_subpolygon(poly, window.chord, s, q)
    spm_s = build_spm(poly, s)
    spm_t = spm_s if t == s else build_spm(poly, t)
    complex_ = build_cells(spm_s, spm_t, p_side)
    cid, value = min_cell(complex_)
    x = representative_point(complex_.cells[cid].polygon)

    half_s = min_link_path(spm_s, x)
    half_t = min_link_path(spm_t, x)
    pts = tuple(half_s) + tuple(reversed(half_t))[1:]
    path = Path(pts)
    if path.segment_count != value:
        raise ConstructionFailure(
            f"routed path has {path.segment_count} links, cell value {value}"
        )
    witness = _first_point_in_region(path, vq.region)
    if witness is None:
        raise ConstructionFailure("same-pocket path does not cross V(q)")
    return QVisibleResult(
        case=Case.SAME_POCKET, distance=value, path=path, witness=witness,
        cell_value=value,
    )


def verify(poly: Polygon, q: Point, result: QVisibleResult) -> bool:
    """Re-check the geometric invariants of a planner result from scratch."""
    try:
        path = result.path
        if point_in_polygon(poly, q) is Location.EXTERIOR:
            return False
        for v in path.vertices:
            if point_in_polygon(poly, v) is Location.EXTERIOR:
                return False
        if path.segment_count != result.distance:
            return False
        for seg in path.segments():
            if not segment_in_polygon(poly, seg):
                return False
        w = result.witness
        on_path = any(on_segment(w, seg.a, seg.b) for seg in path.segments())
        if path.segment_count == 0:
            on_path = w == path.vertices[0]
        if not on_path:
            return False
        if not sees(poly, w, q):
            return False
        if result.case is Case.SAME_POCKET and result.cell_value != result.distance:
            return False
        return True
    except Exception:
        return False
