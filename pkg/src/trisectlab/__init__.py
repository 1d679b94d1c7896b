"""Homological toolkit for trisection diagrams, branched covers of surfaces and braided surfaces."""

from .algebra import Permutation, Presentation, Representation, Word, evaluate, verify_representation
from .braid import BraidWord, identify_closure
from .cover import BranchedCoverSpec, build_cover, euler_char_cover, lift_curve, lift_curve_class
from .lattice import Sublattice, smith_normal_form
from .surface import CurveClass, SurfaceModel
from .trisect import (
    TrisectionDiagram,
    TrisectionParameters,
    euler_characteristic,
    get_fixture,
    homology_summary,
    parameters,
    pullback_trisection,
    stabilize,
    validate_diagram,
)

__all__ = [
    "BranchedCoverSpec",
    "BraidWord",
    "CurveClass",
    "Permutation",
    "Presentation",
    "Representation",
    "Sublattice",
    "SurfaceModel",
    "TrisectionDiagram",
    "TrisectionParameters",
    "Word",
    "build_cover",
    "euler_char_cover",
    "euler_characteristic",
    "evaluate",
    "get_fixture",
    "homology_summary",
    "identify_closure",
    "lift_curve",
    "lift_curve_class",
    "parameters",
    "pullback_trisection",
    "smith_normal_form",
    "stabilize",
    "validate_diagram",
    "verify_representation",
]
