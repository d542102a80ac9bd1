"""Sign vectors at infinity, GSp4 conjugacy, automorphic induction and the
Asai identity for wedge^2 of an induced representation."""

from .params import (
    P_MATRIX,
    S2_MATRIX,
    GSp4Report,
    InductionParams,
    InfinityType,
    LocalParameterPair,
    SignVector,
    WedgeAsaiReport,
    check_wedge_asai_identity,
    gsp4_report,
    induction_params,
    infinity_type,
    reversed_charpoly,
    verify_gsp4_conjugacy,
    wedge_asai_report,
)

__all__ = [
    "GSp4Report",
    "InductionParams",
    "InfinityType",
    "LocalParameterPair",
    "P_MATRIX",
    "S2_MATRIX",
    "SignVector",
    "WedgeAsaiReport",
    "check_wedge_asai_identity",
    "gsp4_report",
    "induction_params",
    "infinity_type",
    "reversed_charpoly",
    "verify_gsp4_conjugacy",
    "wedge_asai_report",
]
