"""Compatible triangulations of simple polygons."""
from .geometry import Polygon, validate_polygon, is_diagonal
from .triangulation import Triangulation, triangulate, build_decomposition
from .visibility import VisibilityIndex, build_index, visible
from .rotation import find_rotations
from .interval_dp import (
    compatible_fixed_correspondence,
    count_triangulations,
    extract_triangulation,
    solve,
    triangulation_exists,
)

__all__ = [
    "Polygon",
    "validate_polygon",
    "is_diagonal",
    "Triangulation",
    "triangulate",
    "build_decomposition",
    "VisibilityIndex",
    "build_index",
    "visible",
    "find_rotations",
    "compatible_fixed_correspondence",
    "count_triangulations",
    "extract_triangulation",
    "solve",
    "triangulation_exists",
]
__version__ = "0.1.0"
