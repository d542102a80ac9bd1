from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artinlab.arith import NumberField
from artinlab.errors import InputError, SingularParameterError
from artinlab.langlands_params import (
    LocalParameterPair,
    SignVector,
    check_wedge_asai_identity,
    gsp4_report,
    induction_params,
    infinity_type,
    reversed_charpoly,
    verify_gsp4_conjugacy,
    wedge_asai_report,
)
from artinlab.langlands_params.params import conjugates, diag, identity

Qi = NumberField.cyclotomic(4)
ONE, ZERO = Qi.one(), Qi.zero()
I = Qi.gen()


def test_sign_vectors():
    assert infinity_type([1, 1, 1]).characters == ("1", "1", "1")
    assert infinity_type([1, -1]).characters == ("1", "sgn")
    assert infinity_type([1, -1, -1, 1]).signature == (2, 2)
    with pytest.raises(InputError):
        SignVector((1, 0))


def test_gsp4():
    r = gsp4_report()
    assert r.ok and r.P_similitude == Fraction(-1, 2) and r.s2_similitude == 1
    assert verify_gsp4_conjugacy()
    assert conjugates(identity(4), diag(2, 3, 5, 7), diag(2, 3, 5, 7))


def test_induction_split_multiset():
    p = LocalParameterPair.split_pair((ONE, -ONE), (I, -I), one=ONE, zero=ZERO)
    ip = induction_params(p)
    assert ip.multiset == (ONE, -ONE, I, -I)
    assert ip.charpoly == [ONE, ZERO, ZERO, ZERO, -ONE]


def test_induction_inert_diag():
    ip = induction_params(LocalParameterPair.inert_pair((4, 9)))
    assert ip.charpoly == [1, 0, -13, 0, 36]  # (1 - 4T^2)(1 - 9T^2)


def test_wedge_asai_examples():
    p = LocalParameterPair.split_pair((ONE, -ONE), (I, -I), one=ONE, zero=ZERO)
    assert check_wedge_asai_identity(p, 1)
    assert check_wedge_asai_identity(LocalParameterPair.split_pair((1, 1), (1, 1)), 1)
    assert check_wedge_asai_identity(LocalParameterPair.inert_pair((2, 3)), -1)
    rep = wedge_asai_report(LocalParameterPair.split_pair((2, 3), (1, 6)), 1, omega=6)
    assert rep.identity and rep.central_ok


def test_errors():
    with pytest.raises(InputError):
        wedge_asai_report(LocalParameterPair.inert_pair((2, 3)), 1)
    with pytest.raises(SingularParameterError):
        LocalParameterPair.split_pair((0, 1), (1, 1))
    with pytest.raises(SingularParameterError):
        LocalParameterPair.inert_pair(((1, 2), (2, 4)))


def test_reversed_charpoly_against_determinant():
    import sympy

    M = [[Fraction(x) for x in row] for row in ((1, 2, 0), (3, -1, 4), (0, 5, 2))]
    T = sympy.symbols("T")
    det = (sympy.eye(3) - T * sympy.Matrix(M)).det()
    expected = [Fraction(int(c)) for c in reversed(sympy.Poly(det, T).all_coeffs())]
    assert reversed_charpoly(M, Fraction(1), Fraction(0)) == expected


nz = st.fractions(min_value=-10, max_value=10, max_denominator=6).filter(lambda x: x != 0)
anyq = st.fractions(min_value=-10, max_value=10, max_denominator=6)


@settings(max_examples=60, deadline=None)
@given(nz, nz, nz, nz)
def test_identity_split_random(a, b, c, d):
    assert check_wedge_asai_identity(LocalParameterPair.split_pair((a, b), (c, d)), 1)


@settings(max_examples=60, deadline=None)
@given(anyq, anyq, anyq, anyq)
def test_identity_inert_random(a, b, c, d):
    if a * d == b * c:
        return
    assert check_wedge_asai_identity(LocalParameterPair.inert_pair(((a, b), (c, d))), -1)
