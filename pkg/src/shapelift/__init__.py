"""Exact computations with shape invariants, Lagrangian path lifting and ECH capacities of 4d toric domains."""

__version__ = "0.1.0"

from .domains import Ball, Ellipsoid, Polydisk, ToricPL, moment_contains, q_polygon, volume
from .exactgeom import DomainError, Point, PolyPath
from .pathlift import classify, general_criterion, obstruction_I, sufficiency_II
from .shape import knotted_member, shape_member

__all__ = [
    "Ball", "Ellipsoid", "Polydisk", "ToricPL", "moment_contains", "q_polygon", "volume",
    "DomainError", "Point", "PolyPath",
    "classify", "general_criterion", "obstruction_I", "sufficiency_II",
    "knotted_member", "shape_member",
]
