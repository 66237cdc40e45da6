"""Finite non-unital rings: subset products, enlargements, Dorroh and multiplier rings."""
from finring.ring import (
    FiniteRing,
    RingError,
    ValidationReport,
    additive_exponent,
    canonical_form,
    cyclic_ring,
    direct_product,
    find_unit,
    is_non_degenerate,
    matrix_ring,
    validate_ring,
    zero_ring,
)

__all__ = [
    "FiniteRing",
    "RingError",
    "ValidationReport",
    "additive_exponent",
    "canonical_form",
    "cyclic_ring",
    "direct_product",
    "find_unit",
    "is_non_degenerate",
    "matrix_ring",
    "validate_ring",
    "zero_ring",
]
