"""Exception hierarchy.

GeometryError covers everything a caller can provoke with bad input.
ConstructionFailure marks an internal consistency violation: it means a
bug or a genuinely degenerate configuration outside the general-position
assumptions, and is surfaced rather than swallowed.
"""


class LinkvisError(Exception):
    pass


class GeometryError(LinkvisError):
    pass


class TooFewVertices(GeometryError):
    pass


class DuplicateVertex(GeometryError):
    pass


class SelfIntersecting(GeometryError):
    def __init__(self, msg, edge_a=None, edge_b=None):
        super().__init__(msg)
        self.edge_a = edge_a
        self.edge_b = edge_b


class PointOutside(GeometryError):
    pass


class EndpointOutside(GeometryError):
    pass


class SegmentOutside(GeometryError):
    pass


class ChordNotInterior(GeometryError):
    pass


class ChordEndpointNotOnBoundary(GeometryError):
    pass


class ChordNotEdge(GeometryError):
    pass


class DegenerateCell(GeometryError):
    pass


class GenerationFailure(GeometryError):
    pass


class ParseError(LinkvisError):
    pass


class ConstructionFailure(LinkvisError):
    pass
