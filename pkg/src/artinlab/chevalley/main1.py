"""Evaluation of the inequality chain bounding q for a semisimple G with an
accepted filtration certificate.

The chain, for G_1 with simple factors G_i(F_{q_i}) of rank l_i:

    (1 - C_n eta) C_1 prod |G_i|  <=  (1 - C_n eta) |G_1|  <=  |H|  <=  N M_{G_1}
        <=  N M_D  <=  N C_2 prod M_{D_i}  <=  N K C_2 prod |G_i| / q_i^{l_i}

where D = prod D_i is the block-diagonal image of G_1 on its irreducible
summands and H is the optimal C(C_n eta, N) witness in G_1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from ..errors import EnumerationOverflow, InputError
from ..matgroup.cprop import check_C_property
from ..matgroup.group import FiniteMatrixGroup, charpoly_histogram, close_group
from ..matgroup.lp import LpFiltrationCertificate
from ..matgroup.modules import _restricted_action, decompose
from .census import ChevalleySpec, direct_product_group


@dataclass
class Main1Report:
    route: str  # "chain" or "irr1"
    links: list = field(default_factory=list)  # (name, lhs, rhs, holds)
    q_bound: Fraction | None = None
    q_actual: int = 0

    @property
    def all_hold(self) -> bool:
        return all(h for _, _, _, h in self.links)

    @property
    def failed(self) -> list[str]:
        return [name for name, _, _, h in self.links if not h]

    def to_json(self):
        return {
            "route": self.route,
            "links": [{"name": n, "lhs": str(a), "rhs": str(b), "holds": h} for n, a, b, h in self.links],
            "all_hold": self.all_hold,
            "failed": self.failed,
            "q_bound": None if self.q_bound is None else str(self.q_bound),
            "q_actual": self.q_actual,
        }


def _simply_connected(entry) -> ChevalleySpec:
    fam = "SL" if entry.family == "PSL" else "Sp"
    return ChevalleySpec(fam, entry.degree, entry.q)


def irreducible_images(G1: FiniteMatrixGroup, cap: int = 200_000) -> list[FiniteMatrixGroup]:
    """Images D_i of G_1 on the summands of a decomposition into irreducibles."""
    ok, summands, _ = decompose(G1.F, G1.generators, G1.n)
    if not ok:
        raise InputError("G_1 does not act semisimply")
    out = []
    for s in summands:
        gens = [_restricted_action(G1.F, g, s) for g in G1.generators]
        out.append(close_group(gens, G1.q, cap=cap, n=len(s)))
    return out


def honest_constants(G: FiniteMatrixGroup, cert: LpFiltrationCertificate, G1: FiniteMatrixGroup) -> dict:
    """Constants making every link true by construction on this instance."""
    specs = [_simply_connected(f) for f in cert.factors]
    images = irreducible_images(G1)
    C1 = Fraction(1)
    for s in specs:
        C1 /= s.center_order
    C2 = factorial(G1.n)
    for D in images:
        C2 //= factorial(D.n)
    K = Fraction(1)
    for s, D in zip(specs, images):
        K *= Fraction(charpoly_histogram(D).M * s.q**s.rank, s.order)
    index = cert.index_G_G1
    C_n = max(4, G.n - 2, index + 1)
    return {"C_n": Fraction(C_n), "C1": C1, "C2": Fraction(C2), "K": K}


def evaluate_main1_chain(
    G: FiniteMatrixGroup,
    cert: LpFiltrationCertificate,
    G1: FiniteMatrixGroup,
    eta,
    N: int,
    constants: dict,
) -> Main1Report:
    if not cert.accepted:
        raise InputError(f"certificate was rejected: {cert.reason}")
    eta = Fraction(eta)
    C_n, C1, C2, K = (Fraction(constants[k]) for k in ("C_n", "C1", "C2", "K"))
    if not eta * C_n < 1:
        raise InputError("need eta < 1/C_n")
    if not cert.factors:
        # G_1 = G_2: the abelian route
        return Main1Report("irr1", q_actual=G.q)
    specs = [_simply_connected(f) for f in cert.factors]
    prod_G = 1
    prod_ql = 1
    for s in specs:
        prod_G *= s.order
        prod_ql *= s.q**s.rank
    c = 1 - C_n * eta
    H = check_C_property(G1, C_n * eta, N).size
    M_G1 = charpoly_histogram(G1).M
    images = irreducible_images(G1)
    try:
        M_D = charpoly_histogram(direct_product_group(images)).M
    except EnumerationOverflow:
        M_D = None
    prod_MD = 1
    for D in images:
        prod_MD *= charpoly_histogram(D).M
    chain = [
        ("C1 prod |G_i| vs |G_1|", c * C1 * prod_G, c * G1.order),
        ("|G_1| vs |H|", c * G1.order, Fraction(H)),
        ("|H| vs N M_G1", Fraction(H), Fraction(N * M_G1)),
    ]
    if M_D is not None:
        chain.append(("N M_G1 vs N M_D", Fraction(N * M_G1), Fraction(N * M_D)))
        chain.append(("N M_D vs N C2 prod M_Di", Fraction(N * M_D), N * C2 * prod_MD))
    else:
        chain.append(("N M_G1 vs N C2 prod M_Di", Fraction(N * M_G1), N * C2 * prod_MD))
    chain.append(("N C2 prod M_Di vs N K C2 prod |G_i|/q^l", N * C2 * prod_MD, N * K * C2 * Fraction(prod_G, prod_ql)))
    links = [(name, a, b, a <= b) for name, a, b in chain]
    q_bound = N * K * C2 / (c * C1)
    links.append(("q <= prod q_i^l_i <= bound", Fraction(prod_ql), q_bound, G.q <= prod_ql <= q_bound))
    return Main1Report("chain", links, q_bound, G.q)

