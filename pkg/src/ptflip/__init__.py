"""Flips in edge-labelled pseudo-triangulations of planar point sets."""
from .geometry import (GeometryError, Orientation, PointSet, convex_hull, convex_layers,
                       orientation, shelling_order)
from .triangulation import (PseudoTriangulation, ShellingEdges, build_left_shelling,
                            build_right_shelling, canonical_labelling)
from .flips import FlipEvent, FlipTrace, exchanging_flip, insertion_flip, deletion_flip, replay
from .pointed import transform_pointed
from .general import transform_general

__all__ = [
    "Orientation", "PointSet", "GeometryError", "orientation", "convex_hull",
    "convex_layers", "shelling_order", "PseudoTriangulation", "ShellingEdges",
    "build_left_shelling", "build_right_shelling", "canonical_labelling",
    "FlipEvent", "FlipTrace", "exchanging_flip", "insertion_flip", "deletion_flip",
    "replay", "transform_pointed", "transform_general",
]
