"""Deterministic SVG rendering of scenes and computed layers.

Output is plain SVG 1.1 text assembled with fixed formatting so that the
same scene and layer selection always produces byte-identical files.
The y axis is flipped at the coordinate level (SVG grows downward).
"""

from fractions import Fraction

from .exact import format_fixed
from .geometry import Polygon, Segment
from .overlay import representative_point
from .planner import Case

DEPTH_COLORS = (
    "#9ecae1", "#a1d99b", "#fdae6b", "#bcbddc", "#fc9272",
    "#c7e9c0", "#fdd0a2", "#dadaeb", "#fee0d2", "#d9d9d9",
)

POINT_STYLE = {
    "s": ("#1f77b4", "s"),
    "t": ("#2ca02c", "t"),
    "q": ("#d62728", "q"),
    "w": ("#9467bd", "w"),
}


class SvgCanvas:
    def __init__(self, polygon: Polygon):
        x0, y0, x1, y1 = polygon.bbox()
        mx = (x1 - x0) * Fraction(5, 100)
        my = (y1 - y0) * Fraction(5, 100)
        mx = mx if mx > 0 else Fraction(1, 2)
        my = my if my > 0 else Fraction(1, 2)
        self._flip = y0 + y1
        self.min_x = x0 - mx
        self.min_y = y0 - my
        self.width = (x1 - x0) + 2 * mx
        self.height = (y1 - y0) + 2 * my
        self.body = []

    def _fmt(self, v) -> str:
        return format_fixed(v, 3)

    def xy(self, p) -> str:
        return f"{self._fmt(p.x)},{self._fmt(self._flip - p.y)}"

    def polygon(self, poly: Polygon, fill="none", stroke="#000000",
                width="0.05", dash=None, opacity=None):
        pts = " ".join(self.xy(v) for v in poly.vertices)
        attrs = [f'points="{pts}"', f'fill="{fill}"', f'stroke="{stroke}"',
                 f'stroke-width="{width}"']
        if dash:
            attrs.append(f'stroke-dasharray="{dash}"')
        if opacity:
            attrs.append(f'fill-opacity="{opacity}"')
        self.body.append(f"<polygon {' '.join(attrs)} />")

    def segment(self, seg: Segment, stroke="#000000", width="0.05", dash=None,
                cls=None):
        attrs = [
            f'x1="{self._fmt(seg.a.x)}"',
            f'y1="{self._fmt(self._flip - seg.a.y)}"',
            f'x2="{self._fmt(seg.b.x)}"',
            f'y2="{self._fmt(self._flip - seg.b.y)}"',
            f'stroke="{stroke}"',
            f'stroke-width="{width}"',
        ]
        if dash:
            attrs.append(f'stroke-dasharray="{dash}"')
        if cls:
            attrs.append(f'class="{cls}"')
        self.body.append(f"<line {' '.join(attrs)} />")

    def polyline(self, points, stroke="#000000", width="0.12"):
        pts = " ".join(self.xy(p) for p in points)
        self.body.append(
            f'<polyline points="{pts}" fill="none" stroke="{stroke}" '
            f'stroke-width="{width}" />'
        )

    def marker(self, p, label):
        color, text = POINT_STYLE[label]
        self.body.append(
            f'<circle cx="{self._fmt(p.x)}" cy="{self._fmt(self._flip - p.y)}" '
            f'r="0.12" fill="{color}" />'
        )
        self.body.append(
            f'<text x="{self._fmt(p.x + Fraction(1, 5))}" '
            f'y="{self._fmt(self._flip - p.y - Fraction(1, 5))}" '
            f'font-size="0.5" fill="{color}">{text}</text>'
        )

    def label(self, p, text, color="#333333"):
        self.body.append(
            f'<text x="{self._fmt(p.x)}" y="{self._fmt(self._flip - p.y)}" '
            f'font-size="0.4" text-anchor="middle" fill="{color}">{text}</text>'
        )

    def comment(self, text):
        self.body.append(f"<!-- {text} -->")

    def render(self) -> str:
        vb = (f"{self._fmt(self.min_x)} "
              f"{self._fmt(self._flip - self.min_y - self.height)} "
              f"{self._fmt(self.width)} {self._fmt(self.height)}")
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'viewBox="{vb}" width="640" height="480" '
            f'preserveAspectRatio="xMidYMid meet">\n'
            "<defs>\n"
            '<pattern id="hatch" width="0.4" height="0.4" '
            'patternUnits="userSpaceOnUse" patternTransform="rotate(45)">\n'
            '<line x1="0" y1="0" x2="0" y2="0.4" stroke="#bbbbbb" '
            'stroke-width="0.08"/>\n'
            "</pattern>\n"
            "</defs>\n"
        )
        return head + "\n".join(self.body) + "\n</svg>\n"


def render_scene(scene, layers):
    """Build the SVG document for a scene with the requested layers.

    Layers: vis, spm-s, spm-t, cells, path.  Layers that do not apply to
    the scene (no q, or a case without cells) emit a comment instead.
    """
    from .overlay import build_cells, min_cell
    from .planner import q_visible_path, _q_side_subpolygon
    from .spm import build_spm
    from .visibility import _visibility_structure, sees

    canvas = SvgCanvas(scene.polygon)

    if "vis" in layers:
        if scene.q is None:
            canvas.comment("vis layer skipped: scene has no q")
        else:
            st = _visibility_structure(scene.polygon, scene.q)
            canvas.polygon(st.region, fill="#fff3b0", stroke="none",
                           opacity="0.8")
            for pk in st.pockets():
                canvas.polygon(pk.region, fill="url(#hatch)", stroke="none")
            for w in st.windows:
                canvas.segment(Segment(w.anchor, w.far), stroke="#b8860b",
                               width="0.06", dash="0.2,0.12",
                               cls="window window-vis")

    for key, src in (("spm-s", scene.s), ("spm-t", scene.t),
                     ("spm-q", scene.q)):
        if key not in layers:
            continue
        if src is None:
            canvas.comment(f"{key} layer skipped: scene has no source point")
            continue
        spm = build_spm(scene.polygon, src)
        for face in spm.faces:
            color = DEPTH_COLORS[(face.depth - 1) % len(DEPTH_COLORS)]
            canvas.polygon(face.polygon, fill=color, stroke="#777777",
                           width="0.02", opacity="0.6")
            canvas.label(representative_point(face.polygon), str(face.depth))
        for w in spm.windows():
            canvas.segment(w.chord, stroke="#555555", width="0.05",
                           dash="0.15,0.1", cls=f"window window-{key}")

    result = None
    if ("cells" in layers or "path" in layers) and scene.q is not None:
        result = q_visible_path(scene.polygon, scene.s, scene.t, scene.q)

    if "cells" in layers:
        if scene.q is None or result is None or result.case is not Case.SAME_POCKET:
            canvas.comment("cells layer skipped: not a same-pocket scene")
        else:
            from .geometry import Location

            st = _visibility_structure(scene.polygon, scene.q)
            pk = next(
                p for p in st.pockets()
                if p.region.contains(scene.s) is not Location.EXTERIOR
            )
            p_side = _q_side_subpolygon(scene.polygon, pk.window.chord,
                                        scene.s, scene.q)
            spm_s = build_spm(scene.polygon, scene.s)
            spm_t = build_spm(scene.polygon, scene.t)
            complex_ = build_cells(spm_s, spm_t, p_side)
            for cell in complex_.cells:
                canvas.polygon(cell.polygon, fill="none", stroke="#444444",
                               width="0.03")
                canvas.label(representative_point(cell.polygon),
                             str(cell.value), color="#000000")

    canvas.polygon(scene.polygon, fill="none", stroke="#000000", width="0.08")

    if "path" in layers:
        if scene.q is None:
            canvas.comment("path layer skipped: scene has no q")
        else:
            canvas.polyline(result.path.vertices, stroke="#d62728")
            canvas.marker(result.witness, "w")

    canvas.marker(scene.s, "s")
    canvas.marker(scene.t, "t")
    if scene.q is not None:
        canvas.marker(scene.q, "q")
    return canvas.render()
