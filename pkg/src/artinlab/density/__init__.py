"""Bounded integer sets Y(c), exceptional prime sets X(c), the threshold for c,
and truncated den.sup estimates."""

from .sets import (
    BoundedIntegerSet,
    DensupTable,
    ExceptionalSet,
    basis_coords,
    classify_X,
    densup_estimate,
    enumerate_Y,
    gram_matrix,
    in_Y,
    integral_basis,
    is_algebraic_integer,
    threshold_c,
)

__all__ = [
    "BoundedIntegerSet",
    "DensupTable",
    "ExceptionalSet",
    "basis_coords",
    "classify_X",
    "densup_estimate",
    "enumerate_Y",
    "gram_matrix",
    "in_Y",
    "integral_basis",
    "is_algebraic_integer",
    "threshold_c",
]
