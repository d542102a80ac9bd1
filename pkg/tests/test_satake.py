import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artinlab.arith import NumberField
from artinlab.errors import AbsentDataError, InputError, InvalidAutomorphismError, SingularParameterError
from artinlab.satake import (
    SatakeSystem,
    check_duality,
    check_integrality,
    dump_system,
    duality_holds,
    elementary_symmetric,
    exterior_coeffs,
    galois_conjugate,
    hecke_poly,
    parse_rational,
    parse_system_lines,
    primes_up_to,
    rankin_partial_sum,
)

Q = NumberField.rationals()
Qi = NumberField.cyclotomic(4)
Q2 = NumberField.quadratic(2)
Q12 = NumberField.cyclotomic(12)


def _i():
    return Qi.gen()


def test_hecke_poly_examples():
    S = SatakeSystem.from_satake(2, 1, Q, {2: [Q.one(), Q.one()]})
    assert [int(c.coords[0]) for c in hecke_poly(S, 2).coeffs] == [1, -2, 1]
    i = _i()
    S = SatakeSystem.from_satake(2, 1, Qi, {5: [i, -i]})
    assert hecke_poly(S, 5).coeffs == (Qi.one(), Qi.zero(), Qi.one())
    S = SatakeSystem.from_satake(4, 1, Qi, {5: [Qi.one(), -Qi.one(), i, -i]})
    assert hecke_poly(S, 5).coeffs == (Qi.one(), Qi.zero(), Qi.zero(), Qi.zero(), -Qi.one())


def test_exterior_coeff_examples():
    S = SatakeSystem.from_satake(4, 1, Q, {3: [Q.one()] * 4})
    assert exterior_coeffs(S, 3, 2) == Q([6])
    i = _i()
    S = SatakeSystem.from_satake(4, 1, Qi, {3: [Qi.one(), -Qi.one(), i, -i]})
    assert exterior_coeffs(S, 3, 2).is_zero()
    assert exterior_coeffs(S, 3, 4) == Qi.one() * -Qi.one() * i * -i
    with pytest.raises(AbsentDataError):
        exterior_coeffs(S, 7, 1)


def test_duality_examples():
    i = _i()
    assert all(duality_holds([Qi.one(), -Qi.one(), i, -i], m, Qi) for m in range(5))
    with pytest.raises(SingularParameterError):
        duality_holds([Qi.one(), Qi.zero()], 1, Qi)
    S = SatakeSystem.from_coefficients(1, 1, Q, {2: [Q([3])]})
    with pytest.raises(AbsentDataError):
        check_duality(S, 2, 1)


def test_duality_random_q12():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 5)
        alpha = [Q12([Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4)]) for _ in range(n)]
        alpha = [a for a in alpha if not a.is_zero()] or [Q12.one()]
        assert all(duality_holds(alpha, m, Q12) for m in range(len(alpha) + 1))


def test_galois_conjugation():
    i = _i()
    S = SatakeSystem.from_satake(2, 1, Qi, {5: [i, -i]})
    T = galois_conjugate(S, Qi.conjugation)
    assert set(T.alphas[5]) == {i, -i}
    assert T.get(5)[0] == S.get(5)[0]
    S2 = SatakeSystem.from_coefficients(1, 1, Q2, {7: [Q2.gen()]})
    assert galois_conjugate(S2, Q2([0, -1])).get(7)[0] == -Q2.gen()
    assert galois_conjugate(S2, Q2.gen()).get(7) == S2.get(7)
    with pytest.raises(InvalidAutomorphismError):
        galois_conjugate(S2, Q2([1, 1]))


def test_integrality_examples():
    assert check_integrality(SatakeSystem.from_coefficients(1, 2, Q, {3: [Q([Fraction(1, 2)])]}), 3)
    assert not check_integrality(SatakeSystem.from_coefficients(1, 2, Q, {5: [Q([Fraction(1, 3)])]}), 5)
    Q3 = NumberField.cyclotomic(3)
    a = (Q3.one() + Q3.gen()) / 7
    assert check_integrality(SatakeSystem.from_coefficients(1, 7, Q3, {2: [a]}), 2)


def test_rankin_examples():
    S = SatakeSystem.from_coefficients(1, 1, Q, {2: [Q([3])]})
    r = rankin_partial_sum(S, 1, 2, 2)
    assert r.interval.lo == r.interval.hi == Fraction(9, 4)
    # a_n(p) is a product of Satake parameters and never vanishes, so only a_1 is zero
    zero = SatakeSystem.from_coefficients(2, 1, Q, {p: [Q.zero(), Q.one()] for p in primes_up_to(50)})
    r = rankin_partial_sum(zero, 1, 2, 50)
    assert r.interval.hi == 0
    with pytest.raises(AbsentDataError):
        rankin_partial_sum(S, 1, 2, 10)


def test_rankin_tempered_below_bound():
    S = SatakeSystem.from_satake(2, 1, Q, {p: [Q.one(), Q.one()] for p in primes_up_to(10**4)})
    r = rankin_partial_sum(S, 1, Fraction(101, 100), 10**4, slack=10)
    assert r.bound_check
    assert float(r.bound.hi) == pytest.approx(4 * 4.60517 + 10, rel=1e-4)


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational([1, 3]) == Fraction(1, 3)
    assert parse_rational(5) == 5
    for bad in ("x", [1, 0], True, 1.5):
        with pytest.raises(InputError):
            parse_rational(bad)


def test_jsonl_round_trip():
    i = _i()
    S = SatakeSystem.from_satake(2, 5, Qi, {2: [i, -i], 3: [Qi.one(), -Qi.one()]})
    S.add_coefficients(7, [Qi([0, 2]), Qi.one()])
    T = parse_system_lines(dump_system(S).splitlines())
    assert T.primes == S.primes
    assert all(T.get(p) == S.get(p) for p in S.primes)
    with pytest.raises(InputError):
        parse_system_lines(['{"n": 1}'])
    with pytest.raises(InputError):
        parse_system_lines(["{oops"])


small = st.fractions(min_value=-6, max_value=6, max_denominator=4).filter(lambda x: x != 0)


@settings(max_examples=80, deadline=None)
@given(st.lists(small, min_size=1, max_size=6))
def test_round_trip_satake_to_hecke(alpha):
    # coefficients from the Satake tuple reconstruct prod (1 - alpha_i T)
    vals = [Q([a]) for a in alpha]
    S = SatakeSystem.from_satake(len(vals), 1, Q, {2: vals})
    poly = [Fraction(1)]
    for a in alpha:
        poly = [x - a * y for x, y in zip(poly + [0], [0] + poly)]
    assert [c.coords[0] for c in hecke_poly(S, 2).coeffs] == poly
    e = elementary_symmetric(vals, Q.zero(), Q.one())
    assert all(duality_holds(vals, m, Q) for m in range(len(vals) + 1))
    assert e[len(vals)] == Q([1]) * _prod(alpha)


def _prod(xs):
    out = Fraction(1)
    for x in xs:
        out *= x
    return Q([out])
