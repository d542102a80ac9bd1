"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s`` or ``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from fractions import Fraction
from math import factorial, sqrt
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import irreducible_not_absolutely, s3, small_corpus  # noqa: E402

from artinlab.arith import NumberField, field  # noqa: E402
from artinlab.chevalley import ChevalleySpec, direct_product_group, make_group, order_bound_report, semisimple_classes, verify_levi_product_bound  # noqa: E402
from artinlab.chevalley.census import class_data  # noqa: E402
from artinlab.density import classify_X, densup_estimate, enumerate_Y, threshold_c  # noqa: E402
from artinlab.errors import InconsistentTablesError  # noqa: E402
from artinlab.langlands_params import LocalParameterPair, check_wedge_asai_identity, gsp4_report  # noqa: E402
from artinlab.langlands_params.params import P_MATRIX, S2_MATRIX, SWAP, conjugates, diag, identity, similitude_factor  # noqa: E402
from artinlab.matgroup import (  # noqa: E402
    charpoly_histogram,
    check_C_property,
    check_lp_filtration,
    close_group,
    inheritance_report,
    is_semisimple,
    is_solvable,
    max_normal_p_subgroup,
    wedderburn_rewrite,
)
from artinlab.recover import (  # noqa: E402
    a4_example,
    c4_example,
    corrupt,
    enumerate_Y as enumerate_cyclo_Y,
    match_frobenius,
    s3_example,
    schur_zassenhaus_lift,
    verify_certificate,
    verify_lift,
)
from artinlab.satake import SatakeSystem, duality_holds, elementary_symmetric, primes_up_to  # noqa: E402

# tolerances and budgets pinned from the acceptance criteria
RUNTIME_1 = 60.0
RUNTIME_2 = 600.0
RUNTIME_10 = 300.0
DENSUP_TOL = 0.2
DENSUP_S = Fraction(10001, 10000)  # s - 1 = 1e-4
DENSUP_P = 10**6
LIFT_K = 6
LIFT_A = 7
RECOVERY_BOUND = 1000

RESULTS = {}


@pytest.fixture
def report(request, pytestconfig):
    """Record a one-line verdict for the current criterion and print it uncaptured."""
    capman = pytestconfig.pluginmanager.getplugin("capturemanager")

    def emit(number: int, ok: bool, detail: str):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}"
        RESULTS[number] = ok
        if capman is not None:
            with capman.global_and_fixture_disabled():
                print("\n" + line)
        else:  # pragma: no cover
            print(line)
        return ok

    return emit


CRIT1_SPECS = [("SL", 2, 3), ("SL", 2, 5), ("SL", 2, 7), ("SL", 3, 2)]


# -- 1 ---------------------------------------------------------------------------------------


def test_c01_counting_formula(report):
    t = time.time()
    bad, n_classes = [], 0
    for fam, n, q in CRIT1_SPECS:
        spec = ChevalleySpec(fam, n, q)
        G = make_group(spec)
        # brute-force oracle: M_G(A) by direct comparison of characteristic polynomials
        for c in semisimple_classes(spec, G):
            n_classes += 1
            key = G.charpolys[c.rep_index]
            brute = sum(1 for row in G.charpolys if tuple(row) == tuple(key))
            pred = Fraction(q ** (c.d - c.l) * G.order, c.centralizer_order)
            lo = Fraction(q, q + 1) ** c.d * Fraction(G.order, q**c.l)
            hi = Fraction(q, q - 1) ** c.d * Fraction(G.order, q**c.l)
            if not (brute == pred == c.M_observed and lo <= brute <= hi):
                bad.append((spec.label, c.rep_index))
    dt = time.time() - t
    ok = not bad and dt <= RUNTIME_1
    report(1, ok, f"{n_classes} semisimple classes, mismatches {bad}, {dt:.1f}s (budget {RUNTIME_1:.0f}s)")
    assert ok


# -- 2 ---------------------------------------------------------------------------------------


def test_c02_steinberg_count(report):
    t = time.time()
    bad, checked = [], 0
    for fam, n, q in CRIT1_SPECS:
        spec = ChevalleySpec(fam, n, q)
        for c in semisimple_classes(spec):
            checked += 1
            if c.unipotent_observed != q ** (c.d - c.l):
                bad.append((spec.label, c.rep_index))
    spec = ChevalleySpec("Sp", 4, 3)
    G = make_group(spec)
    classes = semisimple_classes(spec, G)
    for c in classes:
        checked += 1
        if c.unipotent_observed != 3 ** (c.d - c.l):
            bad.append((spec.label, c.rep_index))
    # Sp4(F_3) has only 9 semisimple classes; sample further semisimple elements
    rng = np.random.default_rng(2024)
    ss = np.flatnonzero(G.element_orders % 3 != 0)
    sampled = rng.choice(ss, size=24, replace=False)
    for i in sampled:
        c = class_data(spec, G, G.elements[i])
        checked += 1
        if c.unipotent_observed != 3 ** (c.d - c.l):
            bad.append((spec.label, int(i)))
    dt = time.time() - t
    ok = not bad and len(classes) + len(sampled) >= 20 and dt <= RUNTIME_2
    report(
        2,
        ok,
        f"{checked} checks (Sp4(3): all {len(classes)} classes + {len(sampled)} sampled elements), "
        f"mismatches {bad}, {dt:.1f}s",
    )
    assert ok


# -- 3 ---------------------------------------------------------------------------------------


def _float_bounds(q, dim, order):
    # independent floating check with a wide margin; exact check is in the library
    return (q - 1) ** dim <= order <= (q + 1) ** dim and (sqrt(q) - 1) ** (2 * dim) <= order * (1 + 1e-12) and order <= (
        sqrt(q) + 1
    ) ** (2 * dim) * (1 + 1e-12)


def test_c03_order_bounds(report):
    specs = [("SL", 2, q) for q in (2, 3, 4, 5, 7, 8, 9)] + [("SL", 3, 2), ("SL", 3, 3), ("Sp", 4, 3)]
    bad = []
    for fam, n, q in specs:
        spec = ChevalleySpec(fam, n, q)
        G = make_group(spec)
        r = order_bound_report(spec, G.order)
        if not (G.order == spec.order and r.ok and _float_bounds(q, spec.dim, G.order)):
            bad.append(spec.label)
    ok = not bad
    report(3, ok, f"{len(specs)} groups, enumerated orders match formulas, failures {bad}")
    assert ok


# -- 4 ---------------------------------------------------------------------------------------


def test_c04_levi_bound(report):
    gl = {
        2: {
            "C3": close_group([[[0, 1], [1, 1]]], 2),
            "S3": close_group([[[0, 1], [1, 0]], [[0, 1], [1, 1]]], 2),
            "C2": close_group([[[1, 1], [0, 1]]], 2),
            "triv1": close_group([], 2, n=1),
            "C7": close_group([[[0, 0, 1], [1, 0, 1], [0, 1, 0]]], 2),
        },
        3: {
            "C4": close_group([[[0, 2], [1, 0]]], 3),
            "pm1": close_group([[[2]]], 3),
            "Q8": close_group([[[0, 2], [1, 0]], [[1, 1], [1, 2]]], 3),
            "SL2": close_group([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], 3),
            "U": close_group([[[1, 1], [0, 1]]], 3),
        },
        5: {"S3": s3(5), "F5x": close_group([[[2]]], 5), "C4": close_group([[[0, 4], [1, 0]]], 5)},
    }
    products = [
        (2, ["C3", "C3"]),
        (2, ["S3", "S3"]),
        (2, ["S3", "C2"]),
        (2, ["triv1", "S3"]),
        (2, ["C7", "triv1"]),
        (2, ["triv1", "triv1", "triv1"]),
        (3, ["C4", "pm1"]),
        (3, ["Q8", "C4"]),
        (3, ["SL2", "pm1"]),
        (3, ["U", "U"]),
        (3, ["pm1", "pm1", "pm1"]),
        (5, ["S3", "F5x"]),
        (5, ["F5x", "F5x"]),
        (5, ["C4", "S3"]),
    ]
    bad = []
    for q, names in products:
        factors = [gl[q][x] for x in names]
        r = verify_levi_product_bound(factors)
        # brute-force M_D from the enumerated product
        D = direct_product_group(factors)
        _, counts = np.unique(D.charpolys, axis=0, return_counts=True)
        degs = [f.n for f in factors]
        C2 = factorial(sum(degs))
        for k in degs:
            C2 //= factorial(k)
        bound = C2 * int(np.prod([charpoly_histogram(f).M for f in factors]))
        if not (int(counts.max()) == r.M_D and r.M_D <= bound and r.ok):
            bad.append((q, names))
    ok = not bad and len(products) >= 10
    report(4, ok, f"{len(products)} block-diagonal products, violations {bad}")
    assert ok


# -- 5 ---------------------------------------------------------------------------------------


def _brute_centralizer(G):
    """All n x n matrices over F_q commuting with the generators."""
    F, n, q = G.F, G.n, G.q
    out = []
    gens = G.generators
    for flat in np.ndindex(*([q] * (n * n))):
        X = np.array(flat, dtype=np.int64).reshape(n, n)
        if all(np.array_equal(F.matmul(X, g), F.matmul(g, X)) for g in gens):
            out.append(X)
    return out


def _is_field(F, mats):
    """A finite commutative set closed under +,* in which every nonzero element is invertible."""
    from artinlab.arith import fq_linalg as la

    n = mats[0].shape[0]
    keys = {m.tobytes() for m in mats}
    for a in mats:
        for b in mats:
            ab = F.matmul(a, b)
            if ab.tobytes() not in keys or not np.array_equal(ab, F.matmul(b, a)):
                return False
        if a.any() and la.rank(F, a.tolist()) != n:
            return False
    return True


def _rev_charpoly_small(big, M):
    """det(1 - M T) over F_{q^r} for m <= 2, written out."""
    m = M.shape[0]
    if m == 1:
        return [1, big.neg(int(M[0, 0]))]
    tr = big.add(int(M[0, 0]), int(M[1, 1]))
    det = big.sub(big.mul(int(M[0, 0]), int(M[1, 1])), big.mul(int(M[0, 1]), int(M[1, 0])))
    return [1, big.neg(tr), det]


def _poly_mul(F, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def test_c05_wedderburn(report):
    from artinlab.arith.finite_field import embedding

    groups = irreducible_not_absolutely()
    bad = []
    for name, G in groups.items():
        W = wedderburn_rewrite(G)
        cent = _brute_centralizer(G)
        F = G.F
        field_ok = len(cent) == G.q**W.r and W.r > 1 and _is_field(F, cent)
        big = field(G.q**W.r)
        emb = embedding(F, big)
        ident_ok = True
        for g, gp in zip(range(G.order), W.element_images):
            fp = _rev_charpoly_small(big, gp)
            prod = fp
            for s in range(1, W.r):
                prod = _poly_mul(big, prod, [big.pow(c, G.q**s) for c in fp])
            if prod != [int(emb[c]) for c in G.charpolys[g]]:
                ident_ok = False
                break
        if not (field_ok and ident_ok):
            bad.append(name)
    ok = not bad and len(groups) >= 5
    report(5, ok, f"{len(groups)} irreducible, not absolutely irreducible groups; centralizer field and f_g identity failures {bad}")
    assert ok


# -- 6 ---------------------------------------------------------------------------------------


def _exhaustive_best(G, N):
    """max |H| over all subsets H of G with at most N distinct characteristic polynomials."""
    keys = [tuple(r) for r in G.charpolys]
    kid = {k: i for i, k in enumerate(sorted(set(keys)))}
    kb = np.array([1 << kid[k] for k in keys], dtype=np.int64)
    used = np.zeros(1, dtype=np.int64)
    size = np.zeros(1, dtype=np.int8)
    for b in kb:  # doubling over elements enumerates every subset
        used = np.concatenate([used, used | b])
        size = np.concatenate([size, size + 1])
    distinct = np.bitwise_count(used)
    return int(size[distinct <= N].max())


def test_c06_cproperty_and_inheritance(report):
    corpus = {k: G for k, G in small_corpus().items() if G.order <= 24}
    bad_opt, subsets = [], 0
    for name, G in corpus.items():
        n_keys = len(charpoly_histogram(G).counts)
        for N in range(1, n_keys + 1):
            best = _exhaustive_best(G, N)
            subsets += 2**G.order
            for eta in (Fraction(1, 10), Fraction(1, 3), Fraction(1, 2), Fraction(3, 5), Fraction(9, 10)):
                r = check_C_property(G, eta, N)
                if r.size != best or r.holds != ((1 - eta) * G.order <= best):
                    bad_opt.append((name, N, str(eta)))
    # inheritance on random instances
    rng = random.Random(7)
    names = [k for k, G in corpus.items() if G.order > 1]
    bad_inh, premises = [], 0
    for _ in range(50):
        G = corpus[rng.choice(names)]
        k = rng.randint(0, min(2, len(G.elements) - 1))
        picks = rng.sample(range(G.order), k)
        Gp = G.subgroup([G.elements[i] for i in picks]) if picks else G.subgroup([np.eye(G.n, dtype=np.int64)])
        index = G.order // Gp.order
        d = index + rng.randint(0, 2)
        eta = Fraction(rng.randint(1, 9), 10 * d)
        N = rng.randint(1, 4)
        rep = inheritance_report(G, Gp, eta, N, d)
        premises += rep.premise
        # oracle: conclusion recomputed by exhaustive subsets of G'
        concl = (1 - d * eta) * Gp.order <= _exhaustive_best(Gp, N)
        if not rep.implication or concl != rep.conclusion:
            bad_inh.append((G.order, Gp.order, d, str(eta), N))
    ok = not bad_opt and not bad_inh
    report(
        6,
        ok,
        f"witness optimal on {len(corpus)} groups ({subsets} subsets), mismatches {bad_opt[:3]}; "
        f"inheritance 50 instances ({premises} with premise true), failures {bad_inh[:3]}",
    )
    assert ok


# -- 7 ---------------------------------------------------------------------------------------


def test_c07_exterior_duality(report):
    rng = random.Random(11)
    K = NumberField.cyclotomic(12)
    fails = 0
    for t in range(1000):
        n = rng.randint(1, 6)
        alpha = []
        while len(alpha) < n:
            a = K([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(K.degree)])
            if not a.is_zero():
                alpha.append(a)
        e = elementary_symmetric(alpha, K.zero(), K.one())
        einv = elementary_symmetric([1 / a for a in alpha], K.zero(), K.one())
        for m in range(n + 1):
            if e[m] != einv[n - m] * e[n]:
                fails += 1
        if t % 50 == 0 and not all(duality_holds(alpha, m, K) for m in range(n + 1)):
            fails += 1
    report(7, fails == 0, f"1000 random tuples in Q(zeta_12)^x, n <= 6, failures {fails}")
    assert fails == 0


# -- 8 ---------------------------------------------------------------------------------------


def test_c08_gsp4_and_asai(report):
    g = gsp4_report()
    check_i = conjugates(P_MATRIX, SWAP, diag(1, -1, -1, 1)) and similitude_factor(P_MATRIX) == Fraction(-1, 2)
    check_iii = conjugates(S2_MATRIX, diag(1, 1, -1, -1), diag(1, -1, -1, 1)) and similitude_factor(S2_MATRIX) == 1
    check_id = conjugates(identity(4), diag(3, 5, 7, 11), diag(3, 5, 7, 11))
    rng = random.Random(5)

    def r():
        return Fraction(rng.choice((-1, 1)) * rng.randint(1, 30), rng.randint(1, 9))

    split_ok = sum(check_wedge_asai_identity(LocalParameterPair.split_pair((r(), r()), (r(), r())), 1) for _ in range(100))
    inert_ok = 0
    for _ in range(100):
        while True:
            m = [[r(), r()], [r(), r()]]
            if m[0][0] * m[1][1] != m[0][1] * m[1][0]:
                break
        inert_ok += check_wedge_asai_identity(LocalParameterPair.inert_pair(m), -1)
    ok = g.ok and check_i and check_iii and check_id and split_ok == 100 and inert_ok == 100
    report(8, ok, f"GSp4 checks {[bool(check_i), bool(check_iii), bool(check_id)]}; wedge/Asai split {split_ok}/100, inert {inert_ok}/100")
    assert ok


# -- 9 ---------------------------------------------------------------------------------------


def _stream(rule, primes):
    Q = NumberField.rationals()
    return SatakeSystem.from_coefficients(
        2, 1, Q, {p: ([1000, 1] if rule(p) else [p % 3 - 1, 1]) for p in primes}
    )


def test_c09_density_pipeline(report):
    thr = threshold_c(1, 2, 1) == 5 and threshold_c(1, 4, 1) == 69
    eta = Fraction(1, 2)
    thr = thr and threshold_c(eta, 2, 1) == 10 and threshold_c(eta, 4, 1) == 138
    c = threshold_c(eta, 2, 1)
    primes = primes_up_to(DENSUP_P)
    Q = NumberField.rationals()
    YN2c = len(enumerate_Y(Q, c))  # N = 1
    parts, ok = [], thr
    for delta, rule in ((0.0, lambda p: False), (0.5, lambda p: p % 4 == 1), (1.0, lambda p: True)):
        S = _stream(rule, primes)
        ex = classify_X(S, c)
        row = densup_estimate(set(ex.X), [DENSUP_S], DENSUP_P).rows[0]
        raw = float(row.ratio.hi)
        corr = row.corrected
        finite = len(ex.tuples) <= YN2c**2
        ok = ok and abs(corr - delta) <= DENSUP_TOL and finite
        parts.append(f"delta={delta}: corrected {corr:.3f} (raw truncated {raw:.3f}), tuples {len(ex.tuples)} <= {YN2c ** 2}")
    report(9, ok, f"threshold_c exact {thr}; " + "; ".join(parts))
    assert ok


# -- 10 --------------------------------------------------------------------------------------


def test_c10_recovery(report):
    t = time.time()
    parts, ok = [], True
    for ex, ells in ((c4_example(), (13, 17)), (s3_example(), (13, 19)), (a4_example(), (17, 19))):
        tabs = [ex.table(ell, RECOVERY_BOUND) for ell in ells]
        cert = match_frobenius(tabs, ex.A, conjugation=ex.conjugation)
        targets = [p for p in primes_up_to(RECOVERY_BOUND) if p not in ex.excluded]
        right = sum(1 for p in targets if p in cert.matches and tuple(cert.matches[p].coeffs) == ex.frob(p))
        try:
            match_frobenius([corrupt(tabs[0], 101), tabs[1]], ex.A)
            caught = False
        except InconsistentTablesError as e:
            caught = e.p == 101
        good = right == len(targets) and caught and verify_certificate(cert, tabs)
        ok = ok and good
        parts.append(f"{ex.name} ell={list(ells)} {right}/{len(targets)} corrupt-caught={caught}")
    dt = time.time() - t
    ok = ok and dt <= RUNTIME_10
    report(10, ok, "; ".join(parts) + f"; {dt:.1f}s")
    assert ok


# -- 11 --------------------------------------------------------------------------------------


def test_c11_schur_zassenhaus(report):
    Y = enumerate_cyclo_Y(LIFT_A, 2)
    parts, ok = [], True
    for name, G in (("S3<GL2(F7)", s3(7)), ("C4<GL2(F5)", close_group([[[0, 4], [1, 0]]], 5))):
        ell = G.q
        res = schur_zassenhaus_lift(G, LIFT_K, A=LIFT_A)
        m = ell**LIFT_K
        # every relation of the multiplication table, recomputed here
        table = G.cayley_table()
        prod = np.mod(np.matmul(res.images[:, None], res.images[None, :]), m)
        rel_ok = bool(np.all(prod == res.images[table]))
        red_ok = bool(np.all(np.mod(res.images, ell) == G.elements))
        # each lifted generator charpoly is the Teichmuller image of a member of Y(A)
        member_ok = all(mt is not None for mt in res.generator_matches)
        if member_ok:
            from artinlab.recover.lift import teichmuller_root

            w = teichmuller_root(ell, LIFT_K)
            for cp, roots in zip(res.generator_charpolys, res.generator_matches):
                poly = [1]
                for r in roots:
                    z = pow(w, (ell - 1) * r.numerator // r.denominator, m)
                    poly = [(a - z * b) % m for a, b in zip(poly + [0], [0] + poly)]
                in_Y = any(sorted(y.roots) == sorted(roots) for y in Y.members)
                member_ok = member_ok and tuple(poly) == tuple(cp) and in_Y
        good = rel_ok and red_ok and member_ok and verify_lift(G, res)
        ok = ok and good
        parts.append(
            f"{name} mod {ell}^{LIFT_K}: relations {rel_ok}, reduces {red_ok}, Y(A={LIFT_A}) members {member_ok}, "
            f"orders {[sorted({r.denominator for r in mt}) for mt in res.generator_matches]}"
        )
    report(11, ok, "; ".join(parts))
    assert ok


# -- 12 --------------------------------------------------------------------------------------


def test_c12_lp_filtration(report):
    SL25 = close_group([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], 5)
    pm = SL25.subgroup([[[4, 0], [0, 4]]])
    one = SL25.subgroup([np.eye(2, dtype=np.int64)])
    acc = check_lp_filtration(SL25, SL25, pm, one)
    S3 = s3(5)
    C3 = S3.subgroup([[[0, 4], [1, 4]]])
    rej = check_lp_filtration(S3, S3, C3, C3)
    clause_ok = (not rej.accepted) and rej.reason.startswith("p-group")
    # semisimple and solvable => no nontrivial normal p-subgroup
    corpus = [G for G in small_corpus().values() if is_solvable(G)]
    checked = bad = 0
    for G in corpus:
        if is_semisimple(G).semisimple:
            checked += 1
            bad += len(max_normal_p_subgroup(G)) != 1
    ok = acc.accepted and clause_ok and bad == 0 and checked > 0
    report(
        12,
        ok,
        f"SL2(5) chain accepted {acc.accepted} ({[f.label for f in acc.factors]}); "
        f"S3 chain rejected: '{rej.reason}'; O_p trivial on {checked - bad}/{checked} semisimple solvable groups",
    )
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
