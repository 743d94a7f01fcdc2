"""Visibility polygons, pockets, and weak visibility from a chord.

The point-visibility polygon V(x) is built by exact ray casting through
every vertex direction: each ray is shot to its first solid exit, which
yields vertex visibility, the occluding reflex vertices, and the shadow
points their windows end at.  The region is then assembled by a single
counterclockwise boundary walk that jumps across each window, skipping
its pocket.

Weak visibility from a chord (an edge of the polygon) follows the same
plan, except that vertex visibility is decided per vertex by an exact
1-D interval computation on the chord: the set of chord parameters that
see the vertex changes only when the sightline sweeps past some polygon
vertex, so the surviving set is resolved by midpoint tests between those
events.  Window lines fall out of the interval extremes, which uniformly
covers sightlines pivoting at chord endpoints, at other reflex vertices,
and the wrap-around windows along the chord's supporting line.

Configurations that would pinch a visibility region into a weakly simple
polygon (two collinear grazed occluders on one ray and the like) are
outside the general-position assumptions and raise ConstructionFailure.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ChordNotEdge, ConstructionFailure, PointOutside
from .geometry import (
    Location,
    Point,
    Polygon,
    Segment,
    _collect_between,
    on_segment,
    orient,
    point_in_polygon,
    segment_in_polygon,
)


@dataclass(frozen=True)
class Window:
    """A maximal edge of a visibility region that is a chord of the polygon."""

    chord: Segment
    anchor: Point
    far_end: Point


@dataclass(frozen=True)
class VisibilityPolygon:
    region: Polygon
    windows: tuple
    source: Optional[Point] = None
    source_chord: Optional[Segment] = None


@dataclass(frozen=True)
class Pocket:
    id: int
    region: Polygon
    window: Window


@dataclass
class _WindowRec:
    anchor: Point
    far: Point
    anchor_pos: tuple
    far_pos: tuple
    start_pos: tuple  # walking ccw from here enters the pocket
    end_pos: tuple

    def to_window(self) -> Window:
        return Window(chord=Segment(self.anchor, self.far), anchor=self.anchor,
                      far_end=self.far)


@dataclass
class _VisStructure:
    poly: Polygon
    region: Polygon
    windows: list
    source: Optional[Point] = None
    source_chord: Optional[Segment] = None

    def pockets(self):
        out = []
        for i, rec in enumerate(self.windows):
            start_pt = rec.anchor if rec.start_pos == rec.anchor_pos else rec.far
            end_pt = rec.far if rec.start_pos == rec.anchor_pos else rec.anchor
            verts = (
                [start_pt]
                + _collect_between(self.poly, rec.start_pos, rec.end_pos)
                + [end_pt]
            )
            out.append(Pocket(id=i, region=Polygon(verts), window=rec.to_window()))
        return out


def _primitive_direction(v: Point):
    """Scale a nonzero rational vector to a coprime integer pair, same direction."""
    l = math.lcm(v.x.denominator, v.y.denominator)
    ix = v.x.numerator * (l // v.x.denominator)
    iy = v.y.numerator * (l // v.y.denominator)
    g = math.gcd(ix, iy)
    return (ix // g, iy // g)


def ray_first_exit(poly: Polygon, origin: Point, direction: Point):
    """Largest t such that the segment from origin to origin + t*direction
    stays inside the closed polygon, together with the point there.

    Grazing touches and collinear slides do not stop the ray; only an
    actual exit does.  Requires origin inside the closed polygon.
    """
    cands = set()
    for e in poly.edges():
        ev = e.vec
        denom = direction.cross(ev)
        rel = e.a - origin
        if denom != 0:
            t = rel.cross(ev) / denom
            u = rel.cross(direction) / denom
            if t > 0 and 0 <= u <= 1:
                cands.add(t)
        elif rel.cross(direction) == 0:
            for p in (e.a, e.b):
                if direction.x != 0:
                    t = (p.x - origin.x) / direction.x
                else:
                    t = (p.y - origin.y) / direction.y
                if t > 0:
                    cands.add(t)
    prev = Fraction(0)
    for t in sorted(cands):
        mid = origin + direction.scale((prev + t) / 2)
        if point_in_polygon(poly, mid) is Location.EXTERIOR:
            return prev, origin + direction.scale(prev)
        prev = t
    return prev, origin + direction.scale(prev)


def _assemble_region(poly: Polygon, nodes: dict, windows: list) -> Polygon:
    """Walk boundary features ccw, jumping across each window's pocket.

    `nodes` maps boundary positions to points (all features that are on
    the region boundary); each window contributes a jump from its pocket
    start to its pocket end.
    """
    jump = {}
    for rec in windows:
        if rec.start_pos in jump:
            raise ConstructionFailure(
                f"two windows share pocket start {rec.start_pos}"
            )
        jump[rec.start_pos] = rec.end_pos
    order = sorted(nodes.keys())
    index = {pos: i for i, pos in enumerate(order)}

    def successor(pos):
        if pos in jump:
            return jump[pos]
        return order[(index[pos] + 1) % len(order)]

    start = windows[0].end_pos
    out = []
    pos = start
    for _ in range(2 * len(order) + 4):
        p = nodes[pos]
        if not out or out[-1] != p:
            out.append(p)
        pos = successor(pos)
        if pos == start:
            break
    else:
        raise ConstructionFailure("region walk did not close")
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    if len(out) < 3:
        raise ConstructionFailure("region walk produced fewer than 3 vertices")
    return Polygon(out)


def _finish_structure(struct: _VisStructure):
    """Conservation certificate: region + pockets must tile the polygon exactly."""
    total = struct.region.area
    for pk in struct.pockets():
        total += pk.region.area
    if total != struct.poly.area:
        raise ConstructionFailure(
            f"visibility region + pockets do not tile the polygon "
            f"({total} != {struct.poly.area})"
        )
    return struct


def _visibility_structure(poly: Polygon, x: Point) -> _VisStructure:
    if point_in_polygon(poly, x) is Location.EXTERIOR:
        raise PointOutside(f"source {x} is outside the polygon")
    n = poly.n
    vs = poly.vertices

    by_dir = {}
    self_index = None
    for i, v in enumerate(vs):
        if v == x:
            self_index = i
            continue
        by_dir.setdefault(_primitive_direction(v - x), []).append(i)

    visible = [False] * n
    if self_index is not None:
        visible[self_index] = True
    windows = []
    for d, idxs in by_dir.items():
        dirv = Point(Fraction(d[0]), Fraction(d[1]))
        T, far = ray_first_exit(poly, x, dirv)
        withparam = []
        for i in idxs:
            rel = vs[i] - x
            t = rel.x / dirv.x if dirv.x != 0 else rel.y / dirv.y
            withparam.append((t, i))
        withparam.sort()
        vis_here = [(t, i) for t, i in withparam if t <= T]
        for _, i in vis_here:
            visible[i] = True
        if not vis_here:
            continue
        # The visible stretch of the ray is a chain of vertex contacts,
        # consecutive ones possibly joined by collinear boundary edges.
        # A gap that is not such an edge is an interior passage: exactly
        # one is allowed (the window), and it must end where the ray exits.
        gaps = []
        for (t0, i0), (t1, i1) in zip(vis_here, vis_here[1:]):
            adjacent = (i1 - i0) % n == 1 or (i0 - i1) % n == 1
            if not adjacent:
                gaps.append((t0, i0))
        t_last, i_last = vis_here[-1]
        if t_last < T:
            gaps.append((t_last, i_last))
        if not gaps:
            continue
        if len(gaps) > 1 or gaps[0] != (
            vis_here[-2] if t_last == T else vis_here[-1]
        ):
            raise ConstructionFailure(
                f"degenerate: ray from {x} toward {far} grazes multiple "
                f"occluders"
            )
        t_r, i_r = gaps[0]
        r = vs[i_r]
        sides = set()
        for nb in (poly.vertex(i_r - 1), poly.vertex(i_r + 1)):
            side = orient(x, r, nb)
            if side == 0:
                rel = nb - x
                t_nb = rel.x / dirv.x if dirv.x != 0 else rel.y / dirv.y
                if t_nb > t_r:
                    raise ConstructionFailure(
                        f"degenerate: boundary continues along the window "
                        f"ray at {r}"
                    )
                continue  # backward collinear chain neighbor
            sides.add(side)
        if len(sides) != 1:
            raise ConstructionFailure(
                f"degenerate occluder configuration at {r} seen from {x}"
            )
        far_pos = poly.boundary_position(far)
        if far_pos is None:
            raise ConstructionFailure(f"window far end {far} not on the boundary")
        windows.append((i_r, _WindowRec(
            anchor=r, far=far,
            anchor_pos=(i_r, Fraction(0)), far_pos=far_pos,
            start_pos=(i_r, Fraction(0)), end_pos=far_pos,
        )))

    # Pocket side per window: the boundary piece immediately after the
    # pocket-start endpoint is invisible from x, the piece after the other
    # endpoint is visible.  Probing both pieces decides it even when a
    # neighboring vertex is dark because of some other window.
    breakpoints = sorted(
        {(i, Fraction(0)) for i in range(n)}
        | {rec.anchor_pos for _, rec in windows}
        | {rec.far_pos for _, rec in windows}
    )
    edges = poly.edges()

    def piece_after_is_dark(pos):
        k = breakpoints.index(pos)
        nxt = breakpoints[(k + 1) % len(breakpoints)]
        p1 = vs[pos[0]] if pos[1] == 0 else edges[pos[0]].point_at(pos[1])
        p2 = vs[nxt[0]] if nxt[1] == 0 else edges[nxt[0]].point_at(nxt[1])
        mid = Segment(p1, p2).midpoint() if p1 != p2 else p1
        if mid == x:
            return False
        return not segment_in_polygon(poly, Segment(x, mid))

    recs = []
    for i_r, rec in windows:
        fwd_dark = piece_after_is_dark(rec.anchor_pos)
        bwd_dark = piece_after_is_dark(rec.far_pos)
        if fwd_dark and not bwd_dark:
            pass  # pocket opens ccw-forward from the anchor: already set
        elif bwd_dark and not fwd_dark:
            rec.start_pos, rec.end_pos = rec.far_pos, rec.anchor_pos
        else:
            raise ConstructionFailure(
                f"cannot orient the pocket of window {rec.anchor}-{rec.far} "
                f"from {x}"
            )
        recs.append(rec)
    recs.sort(key=lambda r: r.start_pos)

    if not recs:
        if not all(visible):
            raise ConstructionFailure(
                f"no windows found but {visible.count(False)} vertices are "
                f"invisible from {x}"
            )
        struct = _VisStructure(poly=poly, region=poly, windows=[], source=x)
        return _finish_structure(struct)

    nodes = {}
    for i, flag in enumerate(visible):
        if flag:
            nodes[(i, Fraction(0))] = vs[i]
    for rec in recs:
        nodes[rec.far_pos] = rec.far
        nodes[rec.anchor_pos] = rec.anchor
    region = _assemble_region(poly, nodes, recs)
    struct = _VisStructure(poly=poly, region=region, windows=recs, source=x)
    return _finish_structure(struct)


def visibility_polygon(poly: Polygon, x: Point) -> VisibilityPolygon:
    """V(x): all points of the closed polygon that see x."""
    st = _visibility_structure(poly, x)
    return VisibilityPolygon(
        region=st.region,
        windows=tuple(rec.to_window() for rec in st.windows),
        source=x,
    )


def pockets(poly: Polygon, x: Point):
    """The connected regions of the polygon invisible to x, one per window."""
    return _visibility_structure(poly, x).pockets()


def sees(poly: Polygon, a: Point, b: Point) -> bool:
    """True iff the closed segment between a and b stays inside the polygon."""
    for p in (a, b):
        if point_in_polygon(poly, p) is Location.EXTERIOR:
            raise PointOutside(f"point {p} is outside the polygon")
    if a == b:
        return True
    return segment_in_polygon(poly, Segment(a, b))


def _chord_events(sub: Polygon, chord: Segment, v: Point):
    """Chord parameters where the sightline from the chord to v sweeps a vertex."""
    events = {Fraction(0), Fraction(1)}
    ev = chord.vec
    for w in sub.vertices:
        if w == v:
            continue
        dv = w - v
        denom = ev.cross(dv)
        if denom == 0:
            continue
        lam = (v - chord.a).cross(dv) / denom
        if 0 < lam < 1:
            events.add(lam)
    return sorted(events)


def _vertex_chord_intervals(sub: Polygon, chord: Segment, v: Point):
    """Maximal open chord-parameter intervals whose points see v, plus the
    event parameters that see v only by grazing."""
    events = _chord_events(sub, chord, v)
    intervals = []
    for lo, hi in zip(events, events[1:]):
        c = chord.point_at((lo + hi) / 2)
        if segment_in_polygon(sub, Segment(c, v)):
            if intervals and intervals[-1][1] == lo:
                intervals[-1] = (intervals[-1][0], hi)
            else:
                intervals.append((lo, hi))
    grazing = []
    if not intervals:
        for lam in events:
            c = chord.point_at(lam)
            if c != v and segment_in_polygon(sub, Segment(c, v)):
                grazing.append(lam)
    return intervals, grazing


def _point_weakly_visible(sub: Polygon, chord: Segment, p: Point) -> bool:
    """Whether any point of the chord sees p (closed conventions)."""
    events = _chord_events(sub, chord, p)
    for lo, hi in zip(events, events[1:]):
        c = chord.point_at((lo + hi) / 2)
        if c != p and segment_in_polygon(sub, Segment(c, p)):
            return True
    for lam in events:
        c = chord.point_at(lam)
        if c != p and segment_in_polygon(sub, Segment(c, p)):
            return True
    return on_segment(p, chord.a, chord.b)


def _weak_visibility_structure(sub: Polygon, chord: Segment) -> _VisStructure:
    n = sub.n
    vs = sub.vertices
    edge_idx = None
    for i, e in enumerate(sub.edges()):
        if {e.a, e.b} == {chord.a, chord.b}:
            edge_idx = i
            break
    if edge_idx is None:
        raise ChordNotEdge(f"{chord} is not an edge of the polygon")
    ia = edge_idx
    ib = (edge_idx + 1) % n
    a, b = vs[ia], vs[ib]
    oriented = Segment(a, b)

    visible = [False] * n
    visible[ia] = visible[ib] = True
    extremes = {}
    grazing_lams = {}
    for i, v in enumerate(vs):
        if i in (ia, ib):
            continue
        intervals, grazing = _vertex_chord_intervals(sub, oriented, v)
        if intervals:
            visible[i] = True
            extremes[i] = (intervals[0][0], intervals[-1][1])
        elif grazing:
            visible[i] = True  # reachable only along the boundary; no open slit
            grazing_lams[i] = tuple(grazing)

    def window_candidate(anchor_idx, direction):
        anchor = vs[anchor_idx]
        T, far = ray_first_exit(sub, anchor, direction)
        if T == 0:
            return None
        far_pos = sub.boundary_position(far)
        if far_pos is None:
            raise ConstructionFailure(f"window far end {far} not on the boundary")
        return far, far_pos

    def anchor_directions(idx):
        """Extreme sightline directions along which a window anchored at
        this vertex could extend.  Chord endpoints only pivot sightlines
        along the chord's supporting line; other anchors must be reflex."""
        if idx == ia:
            return [a - b]
        if idx == ib:
            return [b - a]
        if not sub.is_reflex(idx):
            return []
        lams = set()
        if idx in extremes:
            lams.update(extremes[idx])
        lams.update(grazing_lams.get(idx, ()))
        dirs = []
        for lam in sorted(lams):
            c = oriented.point_at(lam)
            if c != vs[idx]:
                dirs.append(vs[idx] - c)
        return dirs

    def pos_in_cyclic(pos, lo, hi, include_lo, include_hi):
        rel = (sub.cyclic_coordinate(pos) - sub.cyclic_coordinate(lo)) % n
        span = (sub.cyclic_coordinate(hi) - sub.cyclic_coordinate(lo)) % n
        if rel == 0:
            return include_lo
        if rel == span:
            return include_hi
        return rel < span

    # Every maximal run of invisible vertices is one pocket.  Its window
    # is anchored at one of the two visible vertices delimiting the run,
    # and its far end lands on the boundary just past the other end of
    # the run.  Trying the anchors' extreme sightlines and keeping the
    # one that lands there decides anchor and line at once.
    runs = []
    i = (ia + 1) % n
    while i != ia:
        if visible[i]:
            i = (i + 1) % n
            continue
        j = i
        while not visible[(j + 1) % n]:
            j = (j + 1) % n
        runs.append((i, j))
        i = (j + 1) % n

    edges = sub.edges()

    def pos_point(pos):
        return vs[pos[0]] if pos[1] == 0 else edges[pos[0]].point_at(pos[1])

    def piece_visible(p1: Point, p2: Point) -> bool:
        return _point_weakly_visible(sub, oriented, Segment(p1, p2).midpoint())

    def side_candidates(anchor_idx, lo_pos, hi_pos, include_lo, include_hi,
                        forward):
        """Window candidates from one anchor landing in the given cyclic
        position interval, with the boundary dark all the way between the
        landing and the dark run it bounds."""
        out = {}
        for d in anchor_directions(anchor_idx):
            cand = window_candidate(anchor_idx, d)
            if cand is None:
                continue
            far, fp = cand
            if fp in out:
                continue
            if not pos_in_cyclic(fp, lo_pos, hi_pos, include_lo, include_hi):
                continue
            if fp[1] == 0 and not visible[fp[0]]:
                continue  # a window cannot end on a dark vertex
            if forward:
                adj_dark = fp[0] if fp[1] > 0 else (fp[0] - 1) % n
            else:
                adj_dark = (fp[0] + 1) % n if fp[1] > 0 else fp[0]
            if visible[adj_dark]:
                continue  # no dark vertex adjacent to the landing
            if far != vs[adj_dark] and piece_visible(vs[adj_dark], far):
                continue  # darkness does not reach the landing point
            if not _point_weakly_visible(
                sub, oriented, Segment(vs[anchor_idx], far).midpoint()
            ):
                continue  # window line dives through invisible territory
            out[fp] = (far, fp)
        return list(out.values())

    def pick_nearest(cands, origin_pos, all_landings, backward=False):
        """The candidate where darkness actually ends: nearest landing whose
        boundary piece just past it (toward visibility) is visible.  The
        piece is capped at the nearest other candidate landing so a probe
        never straddles a visible gap."""
        def dist(fp):
            d = (sub.cyclic_coordinate(fp) - sub.cyclic_coordinate(origin_pos)) % n
            return n - d if backward else d

        cands = sorted(cands, key=lambda c: dist(c[1]))
        for far, fp in cands:
            if fp[1] == 0:
                return far, fp  # lands on a visible vertex: nothing beyond
            if not backward:
                same = [p for p in all_landings if p[0] == fp[0] and p[1] > fp[1]]
                nxt = min(same) if same else ((fp[0] + 1) % n, Fraction(0))
                p_from, p_to = far, pos_point(nxt)
            else:
                same = [p for p in all_landings if p[0] == fp[0] and p[1] < fp[1]]
                nxt = max(same) if same else (fp[0], Fraction(0))
                p_from, p_to = pos_point(nxt), far
            if p_from == p_to or piece_visible(p_from, p_to):
                return far, fp
        return None

    recs = []
    for istart, iend in runs:
        u = (istart - 1) % n
        w = (iend + 1) % n
        fwd = side_candidates(u, (istart, Fraction(0)), (w, Fraction(0)),
                              include_lo=False, include_hi=True, forward=True)
        bwd = side_candidates(w, (u, Fraction(0)), (iend, Fraction(0)),
                              include_lo=True, include_hi=False, forward=False)
        landings = {fp for _, fp in fwd} | {fp for _, fp in bwd}
        choice_f = pick_nearest(fwd, (istart, Fraction(0)), landings)
        choice_b = pick_nearest(bwd, (iend, Fraction(0)), landings,
                                backward=True)

        def covers_fwd(fp):
            return pos_in_cyclic(fp, (iend, Fraction(0)), (w, Fraction(0)),
                                 include_lo=False, include_hi=True)

        def covers_bwd(fp):
            return pos_in_cyclic(fp, (u, Fraction(0)), (istart, Fraction(0)),
                                 include_lo=True, include_hi=False)

        full_f = choice_f is not None and covers_fwd(choice_f[1])
        full_b = choice_b is not None and covers_bwd(choice_b[1])
        if full_f and not full_b:
            far, fp = choice_f
            recs.append(_WindowRec(vs[u], far, (u, Fraction(0)), fp,
                                   (u, Fraction(0)), fp))
        elif full_b and not full_f:
            far, fp = choice_b
            recs.append(_WindowRec(vs[w], far, (w, Fraction(0)), fp,
                                   fp, (w, Fraction(0))))
        elif choice_f and choice_b and not full_f and not full_b:
            # The run splits into a prefix pocket anchored before it and a
            # suffix pocket anchored after it, separated by a visible gap
            # within a single edge.
            far_f, fp_f = choice_f
            far_b, fp_b = choice_b
            same_edge = fp_f[0] == fp_b[0] and 0 < fp_f[1] < fp_b[1]
            if not same_edge or not piece_visible(far_f, far_b):
                raise ConstructionFailure(
                    f"split pocket over vertices {istart}..{iend} is not "
                    f"separated by a visible gap"
                )
            recs.append(_WindowRec(vs[u], far_f, (u, Fraction(0)), fp_f,
                                   (u, Fraction(0)), fp_f))
            recs.append(_WindowRec(vs[w], far_b, (w, Fraction(0)), fp_b,
                                   fp_b, (w, Fraction(0))))
        else:
            raise ConstructionFailure(
                f"pocket over vertices {istart}..{iend}: could not determine "
                f"its window(s) (forward {choice_f}, backward {choice_b})"
            )
    recs.sort(key=lambda r: r.start_pos)

    if not recs:
        if not all(visible):
            raise ConstructionFailure(
                f"no windows found but {visible.count(False)} vertices are "
                f"invisible from chord {chord}"
            )
        struct = _VisStructure(poly=sub, region=sub, windows=[],
                               source_chord=chord)
        return _finish_structure(struct)

    covered = set()
    for rec in recs:
        for w in _collect_between(sub, rec.start_pos, rec.end_pos):
            covered.add(w)
    for i, flag in enumerate(visible):
        if not flag and vs[i] not in covered:
            raise ConstructionFailure(
                f"invisible vertex {vs[i]} not covered by any window pocket"
            )

    nodes = {}
    for i, flag in enumerate(visible):
        if flag:
            nodes[(i, Fraction(0))] = vs[i]
    for rec in recs:
        nodes[rec.far_pos] = rec.far
        nodes[rec.anchor_pos] = rec.anchor
    region = _assemble_region(sub, nodes, recs)
    struct = _VisStructure(poly=sub, region=region, windows=recs,
                           source_chord=chord)
    return _finish_structure(struct)


def weak_visibility_from_chord(sub: Polygon, chord: Segment) -> VisibilityPolygon:
    """All points of `sub` visible from at least one point of `chord`.

    The chord must be an edge of `sub`.
    """
    st = _weak_visibility_structure(sub, chord)
    return VisibilityPolygon(
        region=st.region,
        windows=tuple(rec.to_window() for rec in st.windows),
        source_chord=chord,
    )
