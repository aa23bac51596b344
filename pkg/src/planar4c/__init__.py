"""Planar triangulation coloring toolkit.

Vertex 4-colorings, Tait edge 3-colorings and mod-3 triangle orientations,
the conversions between them, polygon decompositions along Hamilton circuits,
a solver built on those pieces and exhaustive audits of the counting claims.
"""

from .errors import Planar4cError
from .graph import (
    PolygonTriangulation,
    Triangulation,
    build_polygon,
    build_triangulation,
    combine_polygons,
    find_separating_triangles,
)
from .schemes import EdgeColoring, OrientationAssignment, VertexColoring
from .solver import four_color, four_color_oracle

__version__ = "0.1.0"

__all__ = [
    "EdgeColoring",
    "OrientationAssignment",
    "Planar4cError",
    "PolygonTriangulation",
    "Triangulation",
    "VertexColoring",
    "build_polygon",
    "build_triangulation",
    "combine_polygons",
    "find_separating_triangles",
    "four_color",
    "four_color_oracle",
]
