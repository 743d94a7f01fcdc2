"""Independent brute-force verification.

The oracle never reuses the visibility/SPM machinery: link distances come
from breadth-first search over a grid of mutually visible sample points
(with its own integer-arithmetic fast path), and the naive visibility
polygon is rebuilt by a full-circle angular sweep so the two
constructions can be compared exactly.

Every grid path is a genuine polygonal path inside the polygon, so BFS
hop counts are upper bounds on the true link distance at any resolution
and converge to it as the grid refines.
"""

import functools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConstructionFailure, GenerationFailure, PointOutside
from .geometry import (
    Location,
    Point,
    Polygon,
    Segment,
    orient,
    point_in_polygon,
    segment_in_polygon,
    segment_intersection,
    validate_polygon,
)

INF = math.inf


def _scale(values):
    return math.lcm(*[v.denominator for v in values])


def _int_orient(ax, ay, bx, by, cx, cy):
    v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (v > 0) - (v < 0)


class _IntPolygon:
    """Integer-scaled copy of a polygon for the BFS hot path."""

    def __init__(self, poly: Polygon, extra_points):
        coords = [c for v in poly.vertices for c in (v.x, v.y)]
        coords += [c for p in extra_points for c in (p.x, p.y)]
        self.den = _scale(coords)
        self.pts = [
            (int(v.x * self.den), int(v.y * self.den)) for v in poly.vertices
        ]
        self.n = len(self.pts)
        self.edges = [
            (self.pts[i], self.pts[(i + 1) % self.n]) for i in range(self.n)
        ]
        self.poly = poly

    def to_int(self, p: Point):
        x = p.x * self.den
        y = p.y * self.den
        if x.denominator != 1 or y.denominator != 1:
            raise ConstructionFailure(f"point {p} does not scale to the grid")
        return (int(x), int(y))

    def to_point(self, ip):
        return Point(Fraction(ip[0], self.den), Fraction(ip[1], self.den))

    def contains_interior(self, ip) -> bool:
        x, y = ip
        inside = False
        for (ax, ay), (bx, by) in self.edges:
            if (
                min(ax, bx) <= x <= max(ax, bx)
                and min(ay, by) <= y <= max(ay, by)
                and _int_orient(ax, ay, bx, by, x, y) == 0
            ):
                return False
            if (ay > y) != (by > y):
                side = _int_orient(ax, ay, bx, by, x, y)
                if by > ay:
                    if side > 0:
                        inside = not inside
                else:
                    if side < 0:
                        inside = not inside
        return inside

    def segment_clear(self, ip, jp) -> bool:
        """True iff the open segment has no contact with the boundary at all
        (then it is inside); falls back to the exact kernel on any touch."""
        ix, iy = ip
        jx, jy = jp
        lox, hix = min(ix, jx), max(ix, jx)
        loy, hiy = min(iy, jy), max(iy, jy)
        touched = False
        for (ax, ay), (bx, by) in self.edges:
            if max(ax, bx) < lox or min(ax, bx) > hix:
                continue
            if max(ay, by) < loy or min(ay, by) > hiy:
                continue
            d1 = _int_orient(ix, iy, jx, jy, ax, ay)
            d2 = _int_orient(ix, iy, jx, jy, bx, by)
            d3 = _int_orient(ax, ay, bx, by, ix, iy)
            d4 = _int_orient(ax, ay, bx, by, jx, jy)
            if d1 * d2 < 0 and d3 * d4 < 0:
                return False
            if d1 == 0 or d2 == 0 or d3 == 0 or d4 == 0:
                touched = True
        if not touched:
            return True
        return segment_in_polygon(
            self.poly, Segment(self.to_point(ip), self.to_point(jp))
        )


@dataclass
class GridGraph:
    """Grid samples strictly inside the polygon plus the query points;
    two nodes are adjacent iff they see each other inside the polygon."""

    polygon: Polygon
    resolution: Fraction
    nodes: list
    _ints: list
    _ipoly: _IntPolygon

    @classmethod
    def build(cls, poly: Polygon, resolution, extra_points=()):
        res = resolution if isinstance(resolution, Fraction) else Fraction(resolution)
        if res <= 0:
            raise ValueError("resolution must be positive")
        extras = list(extra_points)
        ip = _IntPolygon(poly, extras + [Point(res, res)])
        step_x = res * ip.den
        if step_x.denominator != 1:
            raise ConstructionFailure("resolution does not scale to the grid")
        step = int(step_x)
        x0, y0, x1, y1 = poly.bbox()
        i0 = math.ceil(x0 / res)
        i1 = math.floor(x1 / res)
        j0 = math.ceil(y0 / res)
        j1 = math.floor(y1 / res)
        ints = []
        for i in range(i0, i1 + 1):
            for j in range(j0, j1 + 1):
                cand = (i * step, j * step)
                if ip.contains_interior(cand):
                    ints.append(cand)
        for p in extras:
            cand = ip.to_int(p)
            if cand not in ints:
                ints.append(cand)
        nodes = [ip.to_point(c) for c in ints]
        return cls(polygon=poly, resolution=res, nodes=nodes, _ints=ints,
                   _ipoly=ip)

    def adjacent(self, i: int, j: int) -> bool:
        if i == j:
            return False
        return self._ipoly.segment_clear(self._ints[i], self._ints[j])

    def index_of(self, p: Point) -> int:
        return self.nodes.index(p)


def _bfs(grid: GridGraph, start: int, goal: int):
    if start == goal:
        return 0
    n = len(grid.nodes)
    dist = [None] * n
    dist[start] = 0
    frontier = [start]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in range(n):
            if dist[u] is not None:
                continue
            for f in frontier:
                if grid.adjacent(f, u):
                    dist[u] = d
                    nxt.append(u)
                    break
        if dist[goal] is not None:
            return dist[goal]
        frontier = nxt
    return INF


def oracle_link_distance(poly: Polygon, s: Point, t: Point, resolution):
    """BFS hop count from s to t over the visibility grid graph."""
    for name, p in (("s", s), ("t", t)):
        if point_in_polygon(poly, p) is Location.EXTERIOR:
            raise PointOutside(f"{name} = {p} is outside the polygon")
    if s == t:
        return 0
    grid = GridGraph.build(poly, resolution, extra_points=[s, t])
    return _bfs(grid, grid.index_of(s), grid.index_of(t))


def _region_windows(poly: Polygon, region: Polygon):
    """Edges of a visibility region that are chords of the polygon."""
    out = []
    for e in region.edges():
        if poly.boundary_position(e.midpoint()) is None:
            out.append(e)
    return out


def oracle_q_visible_distance(poly: Polygon, s: Point, t: Point, q: Point,
                              resolution):
    """Least grid-path hop count from s to t among paths touching V(q).

    State is (node, seen-flag); the flag is set when a node lies in the
    closed naive visibility region of q or a traversed segment crosses one
    of its windows.
    """
    for name, p in (("s", s), ("t", t), ("q", q)):
        if point_in_polygon(poly, p) is Location.EXTERIOR:
            raise PointOutside(f"{name} = {p} is outside the polygon")
    vq = naive_visibility_polygon(poly, q)
    windows = _region_windows(poly, vq)

    if s == t:
        if point_in_polygon(vq, s) is not Location.EXTERIOR:
            return 0
        # fall through: a round trip is needed; BFS below handles s == t
    grid = GridGraph.build(poly, resolution, extra_points=[s, t, q])
    n = len(grid.nodes)
    in_vq = [
        point_in_polygon(vq, node) is not Location.EXTERIOR
        for node in grid.nodes
    ]

    def seg_sees(i, j):
        if in_vq[i] or in_vq[j]:
            return True
        seg = Segment(grid.nodes[i], grid.nodes[j])
        return any(segment_intersection(seg, w) is not None for w in windows)

    si = grid.index_of(s)
    ti = grid.index_of(t)
    start_state = (si, in_vq[si])
    goal = (ti, True)
    if start_state == goal:
        return 0
    dist = {start_state: 0}
    frontier = [start_state]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in range(n):
            need_false = (u, False) not in dist
            need_true = (u, True) not in dist
            if not (need_false or need_true):
                continue
            for f, fflag in frontier:
                if not (need_false or need_true):
                    break
                if not grid.adjacent(f, u):
                    continue
                nf = fflag or seg_sees(f, u)
                if nf and need_true:
                    dist[(u, True)] = d
                    nxt.append((u, True))
                    need_true = False
                elif not nf and need_false:
                    dist[(u, False)] = d
                    nxt.append((u, False))
                    need_false = False
        if goal in dist:
            return dist[goal]
        frontier = nxt
    return INF


def _angle_key(direction):
    dx, dy = direction
    half = 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1
    return half, dx, dy


def _angular_sort(dirs):
    def cmp(d1, d2):
        h1 = 0 if (d1[1] > 0 or (d1[1] == 0 and d1[0] > 0)) else 1
        h2 = 0 if (d2[1] > 0 or (d2[1] == 0 and d2[0] > 0)) else 1
        if h1 != h2:
            return -1 if h1 < h2 else 1
        cr = d1[0] * d2[1] - d1[1] * d2[0]
        if cr > 0:
            return -1
        if cr < 0:
            return 1
        return 0

    return sorted(dirs, key=functools.cmp_to_key(cmp))


def naive_visibility_polygon(poly: Polygon, x: Point) -> Polygon:
    """Visibility polygon by full-circle rotational ray casting.

    Independent of the production construction: directions are swept in
    angular order and each ray is resolved against every edge; the region
    is the concatenation of the per-ray contributions.
    """
    if point_in_polygon(poly, x) is Location.EXTERIOR:
        raise PointOutside(f"{x} is outside the polygon")
    n = poly.n
    vs = poly.vertices
    groups = {}
    self_idx = None
    for i, v in enumerate(vs):
        if v == x:
            self_idx = i
            continue
        d = v - x
        l = math.lcm(d.x.denominator, d.y.denominator)
        ix = d.x.numerator * (l // d.x.denominator)
        iy = d.y.numerator * (l // d.y.denominator)
        g = math.gcd(ix, iy)
        groups.setdefault((ix // g, iy // g), []).append(i)

    visible = [False] * n
    if self_idx is not None:
        visible[self_idx] = True
    ray_info = {}
    for d, idxs in groups.items():
        dirv = Point(Fraction(d[0]), Fraction(d[1]))
        ts = set()
        for e in poly.edges():
            ev = e.vec
            rel = e.a - x
            denom = dirv.cross(ev)
            if denom != 0:
                t = rel.cross(ev) / denom
                u = rel.cross(dirv) / denom
                if t > 0 and 0 <= u <= 1:
                    ts.add(t)
            elif rel.cross(dirv) == 0:
                for pnt in (e.a, e.b):
                    t = (
                        (pnt.x - x.x) / dirv.x
                        if dirv.x != 0
                        else (pnt.y - x.y) / dirv.y
                    )
                    if t > 0:
                        ts.add(t)
        T = Fraction(0)
        for t in sorted(ts):
            mid = x + dirv.scale((T + t) / 2)
            if point_in_polygon(poly, mid) is Location.EXTERIOR:
                break
            T = t
        params = []
        for i in idxs:
            rel = vs[i] - x
            t = rel.x / dirv.x if dirv.x != 0 else rel.y / dirv.y
            if t <= T:
                visible[i] = True
                params.append((t, i))
        params.sort()
        ray_info[d] = (T, x + dirv.scale(T), params)

    ordered = _angular_sort(list(groups.keys()))
    if self_idx is not None:
        # Start the sweep at the outgoing edge so x itself can close the cycle.
        d_out = vs[(self_idx + 1) % n] - x
        l = math.lcm(d_out.x.denominator, d_out.y.denominator)
        ix = d_out.x.numerator * (l // d_out.x.denominator)
        iy = d_out.y.numerator * (l // d_out.y.denominator)
        g = math.gcd(ix, iy)
        k = ordered.index((ix // g, iy // g))
        ordered = ordered[k:] + ordered[:k]

    blocks = []
    for d in ordered:
        T, far, params = ray_info[d]
        if not params:
            continue
        gaps = []
        for (t0, i0), (t1, i1) in zip(params, params[1:]):
            if (i1 - i0) % n != 1 and (i0 - i1) % n != 1:
                gaps.append((t0, i0))
        t_last, i_last = params[-1]
        if t_last < T:
            gaps.append((t_last, i_last))
        if not gaps:
            blocks.append([vs[i] for _, i in params])
            continue
        if len(gaps) > 1 or gaps[0] != params[0] or len(params) > 2:
            raise ConstructionFailure(
                f"degenerate grazing ray from {x} (naive sweep)"
            )
        _, i_r = gaps[0]
        if visible[(i_r + 1) % n]:
            blocks.append([far, vs[i_r]])
        else:
            blocks.append([vs[i_r], far])
    if self_idx is not None:
        blocks.append([x])

    out = []
    for block in blocks:
        for p in block:
            if not out or out[-1] != p:
                out.append(p)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return validate_polygon(out)


def random_simple_polygon(seed: int, n: int, span: int = 1000) -> Polygon:
    """Deterministic random simple polygon by 2-opt untangling.

    Random distinct lattice points are reconnected by reversing crossing
    pairs (each proper-crossing reversal strictly shortens the tour);
    stuck or degenerate attempts are resampled from the same stream.
    """
    if n < 3:
        raise GenerationFailure("need at least 3 vertices")
    rng = random.Random(seed)
    for _ in range(400):
        seen = set()
        pts = []
        while len(pts) < n:
            cand = (rng.randint(0, span), rng.randint(0, span))
            if cand not in seen:
                seen.add(cand)
                pts.append(cand)
        order = [Point(Fraction(px), Fraction(py)) for px, py in pts]
        if _untangle(order, cap=6 * n * n):
            try:
                return validate_polygon(order)
            except Exception:
                continue
    raise GenerationFailure(f"could not untangle a simple {n}-gon (seed {seed})")


def _untangle(order, cap: int) -> bool:
    n = len(order)
    for _ in range(cap):
        crossing = None
        for i in range(n):
            a1 = order[i]
            a2 = order[(i + 1) % n]
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue
                b1 = order[j]
                b2 = order[(j + 1) % n]
                inter = segment_intersection(Segment(a1, a2), Segment(b1, b2))
                if inter is not None:
                    crossing = (i, j)
                    break
            if crossing:
                break
        if crossing is None:
            return True
        i, j = crossing
        order[i + 1:j + 1] = reversed(order[i + 1:j + 1])
    return False
