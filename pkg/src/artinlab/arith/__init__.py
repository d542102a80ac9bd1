"""Exact arithmetic foundation: Q[x], number fields, certified embeddings, F_q."""

from .embeddings import (
    CertifiedInterval,
    abs_sq_exceeds,
    embed_abs_sq_bounds,
    embedding_values,
)
from .finite_field import GF, FqElement, FqPoly, field, is_prime, prime_power
from .numfield import (
    AlgebraicNumber,
    NumberField,
    reduce_mod_place,
    splits_completely,
)

__all__ = [
    "AlgebraicNumber",
    "CertifiedInterval",
    "FqElement",
    "FqPoly",
    "GF",
    "NumberField",
    "abs_sq_exceeds",
    "embed_abs_sq_bounds",
    "embedding_values",
    "field",
    "is_prime",
    "prime_power",
    "reduce_mod_place",
    "splits_completely",
]
