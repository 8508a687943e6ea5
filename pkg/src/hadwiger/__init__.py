"""Exact verification of colored hyperplane-transversal theorems."""

from .certificates import OpenCase, RadonViolation, TransversalWitness, validate
from .exact import (
    OrientedHyperplane,
    affine_circuits,
    hulls_intersect,
    midpoints,
    point_in_hull,
    solve_feasibility,
)
from .radon import (
    Coloring,
    KOrdering,
    PartitionOracle,
    TableOracle,
    enumerate_colorful_circuits,
    is_consistent_ordering,
    is_rainbow_consistent,
    r_bound,
)
from .transversal import (
    ColoredFamily,
    Polytope,
    find_hyperplane_transversal,
    find_monochromatic_transversal,
    projection_interval,
    transversal_in_direction,
)

__all__ = [
    "Coloring", "ColoredFamily", "KOrdering", "OpenCase", "OrientedHyperplane",
    "PartitionOracle", "Polytope", "RadonViolation", "TableOracle", "TransversalWitness",
    "affine_circuits", "enumerate_colorful_circuits", "find_hyperplane_transversal",
    "find_monochromatic_transversal", "hulls_intersect", "is_consistent_ordering",
    "is_rainbow_consistent", "midpoints", "point_in_hull", "projection_interval",
    "r_bound", "solve_feasibility", "transversal_in_direction", "validate",
]
