"""Finite subgroups of GL_n(F_q): enumeration, characteristic-polynomial
statistics, module structure and filtration certificates."""

from .abstract import TableGroup, table_group
from .cprop import CPropertyResult, check_C_property, check_inheritance, inheritance_report
from .group import (
    CharPolyHistogram,
    FiniteMatrixGroup,
    M_of,
    block_diagonal,
    charpoly_histogram,
    close_group,
    load_group,
    parse_group_json,
)
from .lp import (
    LpFiltrationCertificate,
    check_irr1_bound,
    check_lp_filtration,
    is_solvable,
    lie_type_catalog,
    max_normal_p_subgroup,
)
from .modules import (
    WedderburnData,
    clifford_decompose,
    invariant_subspaces,
    is_absolutely_irreducible,
    is_irreducible,
    is_semisimple,
    wedderburn_rewrite,
)

__all__ = [
    "CPropertyResult",
    "CharPolyHistogram",
    "FiniteMatrixGroup",
    "LpFiltrationCertificate",
    "M_of",
    "TableGroup",
    "WedderburnData",
    "block_diagonal",
    "charpoly_histogram",
    "check_C_property",
    "check_inheritance",
    "check_irr1_bound",
    "check_lp_filtration",
    "clifford_decompose",
    "close_group",
    "inheritance_report",
    "invariant_subspaces",
    "is_absolutely_irreducible",
    "is_irreducible",
    "is_semisimple",
    "is_solvable",
    "lie_type_catalog",
    "load_group",
    "max_normal_p_subgroup",
    "parse_group_json",
    "table_group",
    "wedderburn_rewrite",
]
