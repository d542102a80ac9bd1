from fractions import Fraction

import numpy as np
import pytest

from corpus import s3

from artinlab.arith import NumberField
from artinlab.errors import (
    ExhaustedSearchError,
    InconsistentTablesError,
    InputError,
    InvalidConjugationDatum,
    PreconditionError,
    UnmatchedPrimeError,
)
from artinlab.matgroup import close_group
from artinlab.recover import (
    CycloCharPoly,
    ModLFrobTable,
    admissible_primes,
    c4_example,
    conjugation_signature,
    corrupt,
    enumerate_Y,
    is_admissible,
    match_frobenius,
    restrict_Y,
    s3_example,
    schur_zassenhaus_lift,
    trivial_example,
    verify_lift,
    y_size,
)
from artinlab.satake import primes_up_to

Q = NumberField.rationals()
Qi = NumberField.cyclotomic(4)


def test_Y_examples():
    assert len(enumerate_Y(2, 1)) == 1
    Y = enumerate_Y(3, 2)
    assert len(Y) == 3
    assert sorted(tuple(m.integer_coeffs()) for m in Y.members) == [(1, -2, 1), (1, 0, -1), (1, 2, 1)]
    assert len(enumerate_Y(5, 1)) == 6


def test_y_size_matches_enumeration():
    for A, n in ((5, 2), (7, 3), (9, 2)):
        assert y_size(A, n) == len(enumerate_Y(A, n))


def test_admissible_examples():
    assert admissible_primes(Q, 3, n=2, limit=1)[0].ell == 5
    Y = restrict_Y(3, 2, Q)
    assert not is_admissible(Y, 2, 1)
    assert is_admissible(Y, 5, 1)
    with pytest.raises(InputError):
        is_admissible(enumerate_Y(3, 2), 5, 1)
    assert admissible_primes(Qi, 3, n=2, limit=1)[0].ell == 5
    assert all(a.ell % 4 == 1 for a in admissible_primes(Qi, 5, n=1, limit=4))
    with pytest.raises(ExhaustedSearchError):
        admissible_primes(Qi, 5, n=1, search_bound=6)


def test_trivial_table_matches_constant():
    ex = trivial_example(2, 3)
    cert = match_frobenius([ex.table(5, 200), ex.table(7, 200)], 3)
    assert {tuple(m.integer_coeffs()) for m in cert.matches.values()} == {(1, -2, 1)}


def test_s3_recovery_and_corruption():
    ex = s3_example()
    tabs = [ex.table(13, 500), ex.table(19, 500)]
    cert = match_frobenius(tabs, ex.A, conjugation=ex.conjugation)
    assert all(tuple(cert.matches[p].coeffs) == ex.frob(p) for p in cert.matches)
    assert cert.signature.signs == (1, -1)
    with pytest.raises(InconsistentTablesError) as e:
        match_frobenius([corrupt(tabs[0], 101), tabs[1]], ex.A)
    assert e.value.p == 101


def test_unmatched_prime():
    ex = c4_example()
    t = ex.table(13, 100)
    # a table whose entry is not the reduction of any member of Y(5)
    bad = dict(t.entries)
    bad[29] = (1, 3)
    with pytest.raises((UnmatchedPrimeError, InconsistentTablesError)):
        match_frobenius([ModLFrobTable(13, t.K, t.root, t.excluded, bad)], 2)


def test_table_validation(tmp_path):
    ex = c4_example()
    t = ex.table(13, 60)
    p = tmp_path / "t.jsonl"
    t.dump(p)
    assert ModLFrobTable.load(p).entries == t.entries
    with pytest.raises(InputError):
        ModLFrobTable(13, Qi, 5, entries={13: (1, 0)})
    with pytest.raises(InputError):
        ModLFrobTable(15, Qi, 2)
    with pytest.raises(InputError):
        ModLFrobTable.from_lines(['{"ell": 13, "q": 169, "field": [1, 0, 1], "root": 5}'])
    with pytest.raises(InputError):
        match_frobenius([ex.table(5, 50)], 5)  # ell must exceed A


def test_conjugation_signature():
    assert conjugation_signature([1, -2, 1]).signs == (1, 1)
    assert conjugation_signature([1, 0, -1]).signs == (1, -1)
    with pytest.raises(InvalidConjugationDatum):
        conjugation_signature([1, 1, 1])
    assert conjugation_signature(CycloCharPoly((Fraction(0), Fraction(1, 2)))).signs == (1, -1)


def test_lift_s3_k4():
    G = s3(7)
    res = schur_zassenhaus_lift(G, 4, A=7)
    assert verify_lift(G, res)
    orders = {r.denominator for m in res.generator_matches for r in m}
    assert orders == {1, 2, 3}


def test_lift_trivial_and_precondition():
    T = close_group([], 5, n=2)
    res = schur_zassenhaus_lift(T, 3)
    assert np.array_equal(res.images[0], np.eye(2))
    Q8 = close_group([[[0, 1], [1, 0]], [[1, 1], [0, 1]]], 2)
    with pytest.raises(PreconditionError):
        schur_zassenhaus_lift(Q8, 2)


def test_chebotarev_frequencies_s3():
    # identity : transpositions : 3-cycles = 1 : 3 : 2 in the limit
    ex = s3_example()
    ps = [p for p in primes_up_to(20000) if p not in ex.excluded]
    counts = {}
    for p in ps:
        key = tuple(ex.frob(p))
        counts[key] = counts.get(key, 0) + 1
    freqs = sorted(v / len(ps) for v in counts.values())
    assert freqs == pytest.approx([1 / 6, 1 / 3, 1 / 2], abs=0.02)
