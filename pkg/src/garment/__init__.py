"""Exact computations on empty monochromatic 4-point structures in red/blue point sets."""
from .geom import Color, ColoredPointSet, Point, chirotope_fingerprint, convex_hull, orient
from .kernels import BACKEND
from .structures import StructureInstance, StructureKind, empty_monochromatic_structures, parse_kinds

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Color",
    "ColoredPointSet",
    "Point",
    "StructureInstance",
    "StructureKind",
    "chirotope_fingerprint",
    "convex_hull",
    "empty_monochromatic_structures",
    "orient",
    "parse_kinds",
]
