"""Finite Euclidean distance graphs over F_q^2: spectra, hinge counts, triangle classes."""
from .finite_field import FieldCtx, FieldError
from .geometry import Point, QuadraticForm, RigidMotion, Rotation, TriangleSignature
from .counting import VertexSet
from .reports import BoundReport
from .spectral_graphs import (DistanceGraph, RegularColoring, Spectrum, build_coloring,
                              build_distance_graph)

__all__ = [
    "BoundReport", "DistanceGraph", "FieldCtx", "FieldError", "Point", "QuadraticForm",
    "RegularColoring", "RigidMotion", "Rotation", "Spectrum", "TriangleSignature",
    "VertexSet", "build_coloring", "build_distance_graph",
]
