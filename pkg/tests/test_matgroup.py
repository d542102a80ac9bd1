import json
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from corpus import s3, small_corpus

from artinlab.errors import EnumerationOverflow, InputError, InvalidGeneratorError, NotIrreducibleError
from artinlab.matgroup import (
    charpoly_histogram,
    check_C_property,
    check_inheritance,
    check_irr1_bound,
    check_lp_filtration,
    clifford_decompose,
    close_group,
    invariant_subspaces,
    is_semisimple,
    load_group,
    parse_group_json,
    wedderburn_rewrite,
)


def test_orders():
    assert close_group([np.eye(2, dtype=np.int64)], 3).order == 1
    assert close_group([[[0, 2], [1, 0]]], 3).order == 4
    assert s3(5).order == 6


def test_cap_and_singular_generator():
    with pytest.raises(EnumerationOverflow):
        close_group([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], 5, cap=50)
    with pytest.raises(InvalidGeneratorError):
        close_group([[[1, 1], [1, 1]]], 3)


def test_histograms():
    assert charpoly_histogram(close_group([], 3, n=2)).M == 1
    h = charpoly_histogram(s3(5))
    assert sorted(h.counts.values()) == [1, 2, 3]
    assert h.M == 3
    F5 = close_group([[[2]]], 5)
    h = charpoly_histogram(F5)
    assert len(h.counts) == 4 and h.M == 1


def test_C_property_examples():
    G = s3(5)
    assert check_C_property(G, Fraction(3, 5), 1).holds
    assert not check_C_property(G, Fraction(2, 5), 1).holds
    r = check_C_property(G, Fraction(1, 100), 3)
    assert r.holds and r.size == 6


def test_inheritance_examples():
    G = s3(5)
    C3 = G.subgroup([[[0, 4], [1, 4]]])
    assert check_inheritance(G, C3, Fraction(1, 6), 3, 3)
    C4 = close_group([[[0, 2], [1, 0]]], 3)
    C2 = C4.subgroup([[[2, 0], [0, 2]]])
    assert check_inheritance(C4, C2, Fraction(1, 4), 2, 2)
    assert check_inheritance(G, G, Fraction(1, 5), 1, 1)
    with pytest.raises(InputError):
        check_inheritance(C2, G, Fraction(1, 6), 1, 3)


def test_semisimplicity_examples():
    assert is_semisimple(close_group([], 3, n=2)).semisimple
    assert not is_semisimple(close_group([[[1, 1], [0, 1]]], 3)).semisimple
    assert is_semisimple(close_group([[[0, 2], [1, 0]]], 3)).semisimple


def _brute_semisimple(G):
    """Every invariant subspace has an invariant complement (brute force over subspaces)."""
    F, n = G.F, G.n
    subs = invariant_subspaces(F, G.generators, n)
    from artinlab.arith import fq_linalg as la

    for W in subs:
        if 0 < len(W) < n:
            if not any(la.rank(F, list(W) + list(U)) == n and len(U) == n - len(W) for U in subs):
                return False
    return True


@pytest.mark.parametrize("name", sorted(small_corpus()))
def test_semisimplicity_matches_complement_oracle(name):
    G = small_corpus()[name]
    assert is_semisimple(G).semisimple == _brute_semisimple(G)


def test_invariant_subspaces_against_exhaustive_lines():
    # count invariant lines of a 2-dim group by direct enumeration
    for G in (s3(5), close_group([[[1, 1], [0, 1]]], 3), close_group([[[2, 0], [0, 1]]], 7)):
        F = G.F
        lines = set()
        for v in product(range(G.q), repeat=2):
            if not any(v):
                continue
            vv = np.array(v)
            if all(_parallel(F, vv, F.matmul(g, vv[:, None])[:, 0]) for g in G.generators):
                lines.add(_normalise(F, v))
        found = {tuple(W[0]) for W in invariant_subspaces(F, G.generators, 2) if len(W) == 1}
        assert {_normalise(F, w) for w in found} == lines


def _parallel(F, a, b):
    return F.sub(F.mul(int(a[0]), int(b[1])), F.mul(int(a[1]), int(b[0]))) == 0


def _normalise(F, v):
    lead = next(x for x in v if x)
    inv = F.inv(int(lead))
    return tuple(F.mul(inv, int(x)) for x in v)


def test_wedderburn_examples():
    assert wedderburn_rewrite(s3(5)).r == 1
    W = wedderburn_rewrite(close_group([[[0, 2], [1, 0]]], 3))
    assert (W.r, W.m, W.image.q) == (2, 1, 9)
    assert W.image.order == 4
    C7 = close_group([[[0, 0, 1], [1, 0, 1], [0, 1, 0]]], 2)
    assert wedderburn_rewrite(C7).r == 3
    with pytest.raises(NotIrreducibleError):
        wedderburn_rewrite(close_group([[[1, 1], [0, 1]]], 3))


def test_clifford_s3_over_f7():
    G = s3(7)
    C3 = G.subgroup([[[0, 6], [1, 6]]])
    res = clifford_decompose(G, C3).to_json()
    assert len(res["multiplicities"]) == 2


def test_lp_filtration_examples():
    C4 = close_group([[[0, 2], [1, 0]]], 3)
    one = C4.subgroup([np.eye(2, dtype=np.int64)])
    assert check_lp_filtration(C4, C4, C4, one).accepted
    G = s3(5)
    C3 = G.subgroup([[[0, 4], [1, 4]]])
    r = check_lp_filtration(G, G, C3, C3)
    assert not r.accepted and "5-group" in r.reason


def test_irr1_bound_example():
    C4 = close_group([[[0, 4], [1, 0]]], 5)
    assert check_irr1_bound(C4, Fraction(1, 8), 4, 4).holds


def test_json_round_trip(tmp_path):
    obj = {"n": 2, "q": 5, "generators": [[0, 1, 1, 0], [0, 4, 1, 4]]}
    G = parse_group_json(obj)
    p = tmp_path / "g.json"
    p.write_text(json.dumps(G.to_json()))
    assert load_group(p).order == 6
