"""Recognition of 1-planar graphs under crossing-type restrictions."""

from .crossings import ALL_TYPES, TRACTABLE, CombinatorialDrawing, CrossingType, verify_drawing
from .graph import Graph
from .solver import SolveResult, oracle_enumerate, oracle_geom, solve, solve_geom, solve_geom_i3c, solve_i3c

__version__ = "0.1.0"

__all__ = [
    "ALL_TYPES",
    "TRACTABLE",
    "CombinatorialDrawing",
    "CrossingType",
    "Graph",
    "SolveResult",
    "oracle_enumerate",
    "oracle_geom",
    "solve",
    "solve_geom",
    "solve_geom_i3c",
    "solve_i3c",
    "verify_drawing",
]
