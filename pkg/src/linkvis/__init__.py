"""Minimum link paths in simple polygons under a point-visibility constraint.

Exact rational arithmetic throughout; see the README for the CLI.
"""

from .errors import (
    ConstructionFailure,
    GeometryError,
    LinkvisError,
    ParseError,
    PointOutside,
)
from .exact import Scalar, as_scalar
from .geometry import (
    Location,
    Point,
    Polygon,
    Segment,
    orient,
    point_in_polygon,
    pt,
    segment_in_polygon,
    segment_intersection,
    split_by_chord,
    validate_polygon,
)
from .overlay import (
    Cell,
    CellComplex,
    build_cells,
    clip_to_subpolygon,
    min_cell,
    representative_point,
)
from .planner import Case, Path, QVisibleResult, classify, q_visible_path, verify
from .oracle import (
    GridGraph,
    naive_visibility_polygon,
    oracle_link_distance,
    oracle_q_visible_distance,
    random_simple_polygon,
)
from .spm import Spm, SpmFace, build_spm, faces_crossed, link_distance, locate, min_link_path
from .visibility import (
    Pocket,
    VisibilityPolygon,
    Window,
    pockets,
    sees,
    visibility_polygon,
    weak_visibility_from_chord,
)

__all__ = [
    "Case",
    "Cell",
    "CellComplex",
    "ConstructionFailure",
    "GeometryError",
    "GridGraph",
    "LinkvisError",
    "Location",
    "ParseError",
    "Path",
    "Pocket",
    "Point",
    "PointOutside",
    "Polygon",
    "QVisibleResult",
    "Scalar",
    "Segment",
    "Spm",
    "SpmFace",
    "VisibilityPolygon",
    "Window",
    "as_scalar",
    "build_cells",
    "build_spm",
    "classify",
    "clip_to_subpolygon",
    "faces_crossed",
    "link_distance",
    "locate",
    "min_cell",
    "min_link_path",
    "naive_visibility_polygon",
    "oracle_link_distance",
    "oracle_q_visible_distance",
    "orient",
    "pockets",
    "point_in_polygon",
    "pt",
    "q_visible_path",
    "random_simple_polygon",
    "representative_point",
    "sees",
    "segment_in_polygon",
    "segment_intersection",
    "split_by_chord",
    "validate_polygon",
    "verify",
    "visibility_polygon",
    "weak_visibility_from_chord",
]
