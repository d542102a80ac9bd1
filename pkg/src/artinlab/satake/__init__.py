"""Satake-parameter systems: Hecke polynomials, exterior-power coefficients,
duality, Galois conjugation, integrality and Rankin-Selberg partial sums."""

from .system import (
    HeckePoly,
    RankinResult,
    SatakeSystem,
    check_duality,
    check_integrality,
    duality_holds,
    dump_system,
    elementary_symmetric,
    exterior_coeffs,
    galois_conjugate,
    hecke_poly,
    load_system,
    parse_rational,
    parse_system_lines,
    primes_up_to,
    rankin_partial_sum,
)

__all__ = [
    "HeckePoly",
    "RankinResult",
    "SatakeSystem",
    "check_duality",
    "check_integrality",
    "duality_holds",
    "dump_system",
    "elementary_symmetric",
    "exterior_coeffs",
    "galois_conjugate",
    "hecke_poly",
    "load_system",
    "parse_rational",
    "parse_system_lines",
    "primes_up_to",
    "rankin_partial_sum",
]
