from fractions import Fraction

import numpy as np
import pytest

from artinlab.chevalley import (
    ChevalleySpec,
    evaluate_main1_chain,
    honest_constants,
    make_group,
    steinberg_unipotent_count,
    verify_counting_formula,
    verify_levi_product_bound,
    verify_order_bounds,
)
from artinlab.chevalley.census import order_bound_report
from artinlab.errors import InputError
from artinlab.matgroup import charpoly_histogram, check_lp_filtration, close_group


@pytest.mark.parametrize("spec,order", [(("SL", 2, 3), 24), (("SL", 3, 2), 168), (("Sp", 4, 3), 51840)])
def test_orders_formula_and_closure(spec, order):
    s = ChevalleySpec(*spec)
    assert s.order == order
    assert make_group(s).order == order


def test_order_bound_examples():
    assert verify_order_bounds(ChevalleySpec("SL", 2, 3))
    assert verify_order_bounds(ChevalleySpec("Sp", 4, 3))
    r = order_bound_report(ChevalleySpec("SL", 2, 2))
    assert r.ok and r.surd_ok


def test_parse_label():
    s = ChevalleySpec.parse("Sp4(3)")
    assert (s.family, s.n, s.q) == ("Sp", 4, 3)


def test_counting_examples():
    s = ChevalleySpec("SL", 2, 3)
    obs, pred, sand = verify_counting_formula(s, np.eye(2, dtype=np.int64))
    assert obs == pred == 9 and sand
    obs, pred, _ = verify_counting_formula(s, 2 * np.eye(2, dtype=np.int64))
    assert obs == pred == 9
    s5 = ChevalleySpec("SL", 2, 5)
    obs, pred, sand = verify_counting_formula(s5, np.diag([2, 3]))
    assert obs == pred == 30 and sand
    assert steinberg_unipotent_count(s5, np.diag([2, 3])) == (1, 1)
    assert steinberg_unipotent_count(ChevalleySpec("SL", 3, 2), np.eye(3, dtype=np.int64)) == (64, 64)


def test_non_semisimple_rejected():
    with pytest.raises(InputError):
        verify_counting_formula(ChevalleySpec("SL", 2, 3), np.array([[1, 1], [0, 1]]))


def test_levi_single_factor_is_equality():
    G = close_group([[[0, 1], [1, 0]], [[0, 4], [1, 4]]], 5)
    r = verify_levi_product_bound([G])
    assert r.C2 == 1 and r.M_D == charpoly_histogram(G).M == r.bound


def _sl25_chain():
    G = close_group([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], 5)
    cert = check_lp_filtration(G, G, G.subgroup([[[4, 0], [0, 4]]]), G.subgroup([np.eye(2, dtype=np.int64)]))
    return G, cert


def test_main1_chain_with_honest_constants():
    G, cert = _sl25_chain()
    consts = honest_constants(G, cert, G)
    # the chain is conditional on C(C_n eta, N); all keys makes the premise true
    N = len(charpoly_histogram(G).counts)
    rep = evaluate_main1_chain(G, cert, G, Fraction(1, 100), N, consts)
    assert rep.route == "chain" and rep.all_hold


def test_main1_chain_undersized_K_fails_last_link():
    G, cert = _sl25_chain()
    consts = honest_constants(G, cert, G)
    consts["K"] = consts["K"] / 1000
    N = len(charpoly_histogram(G).counts)
    rep = evaluate_main1_chain(G, cert, G, Fraction(1, 100), N, consts)
    assert not rep.all_hold
    assert rep.failed[-1].startswith("q <=") or "K" in rep.failed[-1]


def test_main1_abelian_route():
    C4 = close_group([[[0, 2], [1, 0]]], 3)
    one = C4.subgroup([np.eye(2, dtype=np.int64)])
    cert = check_lp_filtration(C4, C4, C4, one)
    rep = evaluate_main1_chain(C4, cert, C4, Fraction(1, 10), 1, {"C_n": 4, "C1": 1, "C2": 1, "K": 1})
    assert rep.route == "irr1"
