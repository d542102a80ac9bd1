"""Classical-group census: orders, generators, unipotent counts and the
characteristic-polynomial counting formula."""

from .census import (
    ChevalleySpec,
    SemisimpleClassData,
    census,
    centralizer_dimension,
    direct_product_group,
    make_group,
    order_bound_report,
    semisimple_classes,
    steinberg_unipotent_count,
    symplectic_form,
    to_block_form,
    verify_counting_formula,
    verify_levi_product_bound,
    verify_order_bounds,
)
from .main1 import Main1Report, evaluate_main1_chain, honest_constants

__all__ = [
    "ChevalleySpec",
    "Main1Report",
    "SemisimpleClassData",
    "census",
    "centralizer_dimension",
    "direct_product_group",
    "evaluate_main1_chain",
    "honest_constants",
    "make_group",
    "order_bound_report",
    "semisimple_classes",
    "steinberg_unipotent_count",
    "symplectic_form",
    "to_block_form",
    "verify_counting_formula",
    "verify_levi_product_bound",
    "verify_order_bounds",
]
