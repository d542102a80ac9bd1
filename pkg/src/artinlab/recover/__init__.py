"""Recovery of exact Frobenius polynomials from mod-ell tables: the cyclotomic
set Y, admissible primes, cross-ell matching, and Schur-Zassenhaus lifting."""

from .cyclo import (
    AdmissiblePrime,
    CycloCharPoly,
    YSet,
    admissible_primes,
    enumerate_Y,
    is_admissible,
    reduce_member,
    restrict_Y,
    roots_of_unity,
    y_size,
)
from .lift import LiftResult, match_teichmuller, schur_zassenhaus_lift, verify_lift
from .synthetic import EXAMPLES, ArtinExample, a4_example, c4_example, corrupt, s3_example, trivial_example
from .tables import ModLFrobTable, RecoveryCertificate, conjugation_signature, match_frobenius, verify_certificate

__all__ = [
    "AdmissiblePrime",
    "ArtinExample",
    "CycloCharPoly",
    "EXAMPLES",
    "LiftResult",
    "ModLFrobTable",
    "RecoveryCertificate",
    "YSet",
    "a4_example",
    "admissible_primes",
    "c4_example",
    "conjugation_signature",
    "corrupt",
    "enumerate_Y",
    "is_admissible",
    "match_frobenius",
    "match_teichmuller",
    "reduce_member",
    "restrict_Y",
    "roots_of_unity",
    "s3_example",
    "schur_zassenhaus_lift",
    "trivial_example",
    "verify_certificate",
    "verify_lift",
    "y_size",
]
