"""Structure certificates: Larsen-Pink style filtrations, maximal normal
p-subgroups, and the abelian-normal-subgroup bound for groups of order prime to p."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd

import numpy as np

from ..arith.finite_field import factorint, prime_power
from ..errors import InputError, PreconditionError, SearchFailure
from .abstract import table_group
from .cprop import check_C_property
from .group import FiniteMatrixGroup, is_p_power


# -- catalog of simple groups of Lie type --------------------------------------


@dataclass(frozen=True)
class LieTypeEntry:
    family: str  # "PSL" or "PSp"
    degree: int  # m for PSL_m, 4 for PSp_4
    q: int
    order: int

    @property
    def p(self) -> int:
        return prime_power(self.q)[0]

    @property
    def label(self) -> str:
        return f"{self.family}_{self.degree}({self.q})"


def psl_order(m: int, q: int) -> int:
    o = q ** (m * (m - 1) // 2)
    for i in range(2, m + 1):
        o *= q**i - 1
    return o // gcd(m, q - 1)


def psp4_order(q: int) -> int:
    return q**4 * (q**2 - 1) * (q**4 - 1) // gcd(2, q - 1)


# PSL_2(2) = S_3, PSL_2(3) = A_4 and PSp_4(2) = S_6 are not simple
_NOT_SIMPLE = {("PSL", 2, 2), ("PSL", 2, 3), ("PSp", 4, 2)}


@lru_cache(maxsize=None)
def lie_type_catalog(max_q: int = 81, max_m: int = 4) -> tuple[LieTypeEntry, ...]:
    out = []
    for q in range(2, max_q + 1):
        if len(factorint(q)) != 1:
            continue
        for m in range(2, max_m + 1):
            if ("PSL", m, q) not in _NOT_SIMPLE:
                out.append(LieTypeEntry("PSL", m, q, psl_order(m, q)))
        if ("PSp", 4, q) not in _NOT_SIMPLE:
            out.append(LieTypeEntry("PSp", 4, q, psp4_order(q)))
    return tuple(sorted(out, key=lambda e: (e.order, e.family, e.degree, e.q)))


def catalog_matches(order: int, p: int, catalog=None) -> list[LieTypeEntry]:
    catalog = catalog or lie_type_catalog()
    return [e for e in catalog if e.order == order and e.p == p]


# -- filtration certificates ------------------------------------------------------


@dataclass
class LpFiltrationCertificate:
    accepted: bool
    reason: str  # failed clause, or "" when accepted
    orders: tuple  # |G|, |G1|, |G2|, |G3|
    index_G_G1: int
    J1: int | None
    factors: list = field(default_factory=list)  # LieTypeEntry per simple factor of G1/G2
    abelian_order: int = 0  # |G2/G3|
    p: int = 0

    @property
    def factor_count(self) -> int:
        return len(self.factors)

    def to_json(self):
        return {
            "accepted": self.accepted,
            "reason": self.reason,
            "orders": list(self.orders),
            "index_G_G1": self.index_G_G1,
            "J1": self.J1,
            "factors": [
                {"family": f.family, "degree": f.degree, "q": f.q, "order": f.order} for f in self.factors
            ],
            "factor_count": self.factor_count,
            "abelian_order": self.abelian_order,
            "p": self.p,
        }


def _commute_mod(F, a, b, G3: FiniteMatrixGroup) -> bool:
    from ..arith import fq_linalg as la

    ai = np.asarray(la.inverse(F, a.tolist()))
    bi = np.asarray(la.inverse(F, b.tolist()))
    c = F.matmul(F.matmul(F.matmul(a, b), ai), bi)
    return G3.contains(c)


def check_lp_filtration(
    G: FiniteMatrixGroup,
    G1: FiniteMatrixGroup,
    G2: FiniteMatrixGroup,
    G3: FiniteMatrixGroup,
    catalog=None,
    J1: int | None = None,
    table_cap: int = 2000,
) -> LpFiltrationCertificate:
    """Check the four clauses of the filtration G > G1 > G2 > G3.

    Rejections carry the name of the first failed clause.
    """
    p = G.p
    orders = (G.order, G1.order, G2.order, G3.order)
    idx = G.order // G1.order if G1.order else 0

    def reject(reason):
        return LpFiltrationCertificate(False, reason, orders, idx, J1, p=p)

    for name, H in (("G1", G1), ("G2", G2), ("G3", G3)):
        if not H.is_subgroup_of(G):
            return reject(f"{name} is not a subgroup of G")
    if not G2.is_subgroup_of(G1):
        return reject("G2 is not contained in G1")
    if not G3.is_subgroup_of(G2):
        return reject("G3 is not contained in G2")
    for name, H in (("G1", G1), ("G2", G2), ("G3", G3)):
        if not H.is_normal_in(G):
            return reject(f"{name} is not normal in G")
    if J1 is not None and idx > J1:
        return reject(f"index bound: [G:G1] = {idx} > J1 = {J1}")
    if not is_p_power(G3.order, p):
        return reject(f"p-group: G3 is not a {p}-group (order {G3.order})")
    ab_order = G2.order // G3.order
    for a in G2.generators:
        for b in G2.generators:
            if not _commute_mod(G.F, a, b, G3):
                return reject("abelian: G2/G3 is not abelian")
    if ab_order % p == 0:
        return reject(f"abelian: |G2/G3| = {ab_order} is divisible by p = {p}")
    # G1/G2 as a product of simple groups of Lie type in characteristic p
    T = table_group(G1, cap=table_cap)
    N = G2.member_indices_in(G1)
    Q, _ = T.quotient(N)
    parts = Q.simple_direct_factors()
    if parts is None:
        return reject("lie-type: G1/G2 is not a direct product of nonabelian simple groups")
    factors = []
    for part in parts:
        matches = catalog_matches(len(part), p, catalog)
        if not matches:
            return reject(f"lie-type: simple factor of order {len(part)} matches no group of Lie type in characteristic {p}")
        factors.append(matches[0])
    return LpFiltrationCertificate(True, "", orders, idx, J1, factors, ab_order, p)


# -- maximal normal p-subgroup ------------------------------------------------------


def max_normal_p_subgroup(G: FiniteMatrixGroup, p: int | None = None, table_cap: int = 2000) -> np.ndarray:
    """O_p(G): the largest normal p-subgroup, as sorted element indices of G."""
    p = p or G.p
    T = table_group(G, cap=table_cap)
    best = np.array([T.identity])
    for N in T.normal_subgroups:
        if is_p_power(len(N), p) and len(N) > len(best):
            best = N
    return best


def is_solvable(G: FiniteMatrixGroup, table_cap: int = 2000) -> bool:
    return table_group(G, cap=table_cap).is_solvable()


# -- the abelian bound ----------------------------------------------------------------


@dataclass(frozen=True)
class Irr1Report:
    holds: bool
    A_order: int
    index: int
    premise: bool  # G satisfies C(eta, N)
    H_A: int  # |H cap A|
    lower: Fraction  # (1 - C_n eta) |A|
    upper: int  # n! N
    max_fiber_A: int  # M_A, at most n! for diagonalizable A
    group_bound: Fraction  # [G:A] n! N / (1 - C_n eta)

    def to_json(self):
        return {
            "holds": self.holds,
            "A_order": self.A_order,
            "index": self.index,
            "premise": self.premise,
            "H_A": self.H_A,
            "lower": str(self.lower),
            "upper": self.upper,
            "max_fiber_A": self.max_fiber_A,
            "group_bound": str(self.group_bound),
        }


def abelian_normal_subgroup(G: FiniteMatrixGroup, max_index, table_cap: int = 2000) -> np.ndarray:
    """Largest abelian normal subgroup of index <= max_index (ties: lexicographic)."""
    T = table_group(G, cap=table_cap)
    best = None
    for N in T.normal_subgroups:
        if G.order // len(N) > max_index:
            continue
        if not T.subgroup(N).is_abelian():
            continue
        if best is None or len(N) > len(best):
            best = N
    if best is None:
        raise SearchFailure(f"no abelian normal subgroup of index <= {max_index}")
    return best


def check_irr1_bound(G: FiniteMatrixGroup, eta, N: int, C_n, table_cap: int = 2000) -> Irr1Report:
    """Verify (1 - C_n eta)|A| <= |H cap A| <= n! N for an abelian normal A."""
    eta, C_n = Fraction(eta), Fraction(C_n)
    if G.order % G.p == 0:
        raise PreconditionError("|G| must be prime to p")
    if not eta * C_n < 1:
        raise PreconditionError("need eta < 1/C_n")
    if N < 1:
        raise InputError("N must be positive")
    A = abelian_normal_subgroup(G, C_n, table_cap)
    res = check_C_property(G, eta, N)
    HA = int(np.isin(res.witness, A).sum())
    lower = (1 - C_n * eta) * len(A)
    upper = factorial(G.n) * N
    cps = G.charpolys[A]
    _, counts = np.unique(cps, axis=0, return_counts=True)
    max_fiber = int(counts.max())
    index = G.order // len(A)
    links = [HA <= upper, max_fiber <= factorial(G.n)]
    if res.holds:
        links.append(lower <= HA)
    bound = Fraction(index * upper) / (1 - C_n * eta)
    if res.holds:
        links.append(G.order <= bound)
    return Irr1Report(all(links), len(A), index, res.holds, HA, lower, upper, max_fiber, bound)
