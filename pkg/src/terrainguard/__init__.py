"""Exact solver for the continuous and vertex-restricted 1.5D terrain
guarding problem: discretization, filtering, set cover, generators, and
rendering."""

from .geometry import (
    EdgePoint,
    Terrain,
    TerrainError,
    TerrainPoint,
    VertexRef,
    VisibilityRegion,
    extremal_points,
    format_terrain,
    parse_terrain,
    sees,
)
from .visibility import vertex_regions, visibility_region

__all__ = [
    "EdgePoint",
    "Terrain",
    "TerrainError",
    "TerrainPoint",
    "VertexRef",
    "VisibilityRegion",
    "extremal_points",
    "format_terrain",
    "parse_terrain",
    "sees",
    "vertex_regions",
    "visibility_region",
]

__version__ = "0.1.0"
