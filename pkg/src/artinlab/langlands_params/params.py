"""Archimedean sign vectors, the GSp4 conjugacy checks, and the local identity
wedge^2 Ind(rho) = (As(rho) x omega_{K/Q}) + Ind(det rho) at split and inert primes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..errors import InputError, SingularParameterError

# -- exact matrices over any field whose elements support + - * and / int ---------------


def mat_mul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(1, len(B))), A[i][0] * B[0][j]) for j in range(len(B[0]))] for i in range(len(A))]


def identity(n, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(r) for r in zip(*A)]


def mat_inverse(A):
    """Gauss-Jordan over Fraction entries."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise SingularParameterError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def reversed_charpoly(A, one, zero) -> list:
    """Coefficients of det(1 - A T), low-to-high (Faddeev-LeVerrier)."""
    n = len(A)
    Mk = identity(n, one, zero)
    c = [one]
    for k in range(1, n + 1):
        if k > 1:
            Mk = [[x + c[-1] if i == j else x for j, x in enumerate(row)] for i, row in enumerate(mat_mul(A, Mk))]
        AM = mat_mul(A, Mk)
        tr = AM[0][0]
        for i in range(1, n):
            tr = tr + AM[i][i]
        c.append(-tr / k)
    return c


def poly_mul(f, g, zero):
    out = [zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return out


def wedge2(M, zero):
    n = len(M)
    pairs = list(combinations(range(n), 2))
    return [
        [M[k][i] * M[l][j] - M[l][i] * M[k][j] for (i, j) in pairs]
        for (k, l) in pairs
    ]


def block(A, B, C, D):
    return [ra + rb for ra, rb in zip(A, B)] + [rc + rd for rc, rd in zip(C, D)]


# -- sign vectors ---------------------------------------------------------------------


@dataclass(frozen=True)
class SignVector:
    signs: tuple

    def __post_init__(self):
        s = tuple(int(x) for x in self.signs)
        if any(x not in (1, -1) for x in s):
            raise InputError(f"sign vector entries must be +1 or -1: {self.signs}")
        object.__setattr__(self, "signs", tuple(sorted(s, reverse=True)))

    @property
    def n(self):
        return len(self.signs)

    @property
    def signature(self) -> tuple[int, int]:
        return self.signs.count(1), self.signs.count(-1)

    def to_json(self):
        return list(self.signs)


@dataclass(frozen=True)
class InfinityType:
    characters: tuple  # "1" or "sgn" per sign, canonical order
    signature: tuple

    def to_json(self):
        return {"characters": list(self.characters), "signature": list(self.signature)}


def infinity_type(signs) -> InfinityType:
    sv = signs if isinstance(signs, SignVector) else SignVector(tuple(signs))
    chars = tuple("1" if e == 1 else "sgn" for e in sv.signs)
    return InfinityType(chars, sv.signature)


# -- GSp4 checks ---------------------------------------------------------------------------


def _F(rows):
    return [[Fraction(x) for x in r] for r in rows]


P_MATRIX = [[Fraction(x, 2) for x in r] for r in ((1, 0, 1, 0), (0, -1, 0, 1), (1, 0, -1, 0), (0, 1, 0, 1))]
S2_MATRIX = _F(((1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0), (0, -1, 0, 0)))
SWAP = _F(((0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0)))
J4 = _F(((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0)))


def diag(*d):
    n = len(d)
    return [[Fraction(d[i]) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def similitude_factor(X, J=J4):
    """lambda with tX J X = lambda J, or None."""
    L = mat_mul(mat_mul(transpose(X), J), X)
    lam = L[0][2] / J[0][2]
    scaled = [[lam * x for x in r] for r in J]
    return lam if L == scaled else None


@dataclass(frozen=True)
class GSp4Report:
    P_conjugates_swap: bool
    P_similitude: Fraction | None
    s2_conjugates: bool
    s2_similitude: Fraction | None

    @property
    def ok(self) -> bool:
        return (
            self.P_conjugates_swap
            and self.P_similitude == Fraction(-1, 2)
            and self.s2_conjugates
            and self.s2_similitude == 1
        )

    def to_json(self):
        return {
            "P_conjugates_swap": self.P_conjugates_swap,
            "P_similitude": None if self.P_similitude is None else str(self.P_similitude),
            "s2_conjugates": self.s2_conjugates,
            "s2_similitude": None if self.s2_similitude is None else str(self.s2_similitude),
            "ok": self.ok,
        }


def conjugates(X, A, B) -> bool:
    """X^-1 A X == B."""
    return mat_mul(mat_mul(mat_inverse(X), A), X) == [[Fraction(x) for x in r] for r in B]


def gsp4_report() -> GSp4Report:
    target = diag(1, -1, -1, 1)
    return GSp4Report(
        conjugates(P_MATRIX, SWAP, target),
        similitude_factor(P_MATRIX),
        conjugates(S2_MATRIX, diag(1, 1, -1, -1), target),
        similitude_factor(S2_MATRIX),
    )


def verify_gsp4_conjugacy() -> bool:
    return gsp4_report().ok


# -- automorphic induction and Asai ------------------------------------------------------


@dataclass(frozen=True)
class LocalParameterPair:
    """Split: alpha, beta at the two places above p.  Inert: g, the 2x2 datum of Frob^2."""

    split: bool
    alpha: tuple = ()
    beta: tuple = ()
    g: tuple = ()  # 2x2 rows
    one: object = Fraction(1)
    zero: object = Fraction(0)

    @classmethod
    def split_pair(cls, alpha, beta, one=Fraction(1), zero=Fraction(0)):
        if len(alpha) != 2 or len(beta) != 2:
            raise InputError("split data needs two 2-tuples")
        pair = cls(True, tuple(alpha), tuple(beta), one=one, zero=zero)
        if any(x == zero for x in pair.alpha + pair.beta):
            raise SingularParameterError("zero Satake parameter")
        return pair

    @classmethod
    def inert_pair(cls, g, one=Fraction(1), zero=Fraction(0)):
        """``g`` is a 2-tuple (taken as a diagonal) or a 2x2 matrix."""
        if len(g) == 2 and not isinstance(g[0], (list, tuple)):
            g = ((g[0], zero), (zero, g[1]))
        g = tuple(tuple(r) for r in g)
        if len(g) != 2 or any(len(r) != 2 for r in g):
            raise InputError("inert data must be a 2-tuple or a 2x2 matrix")
        if g[0][0] * g[1][1] - g[0][1] * g[1][0] == zero:
            raise SingularParameterError("inert datum is singular")
        return cls(False, g=g, one=one, zero=zero)

    def det_g(self):
        g = self.g
        return g[0][0] * g[1][1] - g[0][1] * g[1][0]


def _as_rows(t):
    return [list(r) for r in t]


def induction_matrix(pair: LocalParameterPair):
    """Image of Frob_p under I_K^Q as an explicit 4x4 matrix."""
    o, z = pair.one, pair.zero
    if pair.split:
        a, b = pair.alpha, pair.beta
        return [[(a + b)[i] if i == j else z for j in range(4)] for i in range(4)]
    # I(g, 1; 1) composed with I(1, 1; theta): x + y -> g(y) + x
    Z2 = [[z, z], [z, z]]
    return block(Z2, _as_rows(pair.g), identity(2, o, z), Z2)


@dataclass(frozen=True)
class InductionParams:
    split: bool
    multiset: tuple | None
    matrix: list
    charpoly: list  # det(1 - M T)


def induction_params(pair: LocalParameterPair) -> InductionParams:
    M = induction_matrix(pair)
    cp = reversed_charpoly(M, pair.one, pair.zero)
    return InductionParams(pair.split, pair.alpha + pair.beta if pair.split else None, M, cp)


def asai_matrix(pair: LocalParameterPair):
    z = pair.zero
    if pair.split:
        a, b = pair.alpha, pair.beta
        d = [a[i] * b[j] for i in range(2) for j in range(2)]
        return [[d[i] if i == j else z for j in range(4)] for i in range(4)]
    # As(g, 1; 1) composed with As(1, 1; theta): e_i (x) e_j -> g(e_j) (x) e_i
    g = pair.g
    A = [[z] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            for a in range(2):
                A[2 * a + i][2 * i + j] = A[2 * a + i][2 * i + j] + g[a][j]
    return A


def induced_det_matrix(pair: LocalParameterPair):
    o, z = pair.one, pair.zero
    if pair.split:
        a, b = pair.alpha, pair.beta
        return [[a[0] * a[1], z], [z, b[0] * b[1]]]
    return [[z, pair.det_g()], [o, z]]


@dataclass(frozen=True)
class WedgeAsaiReport:
    identity: bool
    lhs: list  # det(1 - T wedge^2 Ind)
    rhs: list  # det(1 - omega T As) det(1 - T Ind det)
    central_ok: bool | None  # Ind(det rho) = omega + omega omega_{K/Q}, when omega is given

    def to_json(self):
        return {
            "identity": self.identity,
            "lhs": [str(x) for x in self.lhs],
            "rhs": [str(x) for x in self.rhs],
            "central_ok": self.central_ok,
        }


def wedge_asai_report(pair: LocalParameterPair, omega_KQ: int, omega=None) -> WedgeAsaiReport:
    if omega_KQ not in (1, -1):
        raise InputError("omega_{K/Q}(p) must be +1 or -1")
    if pair.split != (omega_KQ == 1):
        raise InputError("split flag is inconsistent with omega_{K/Q}(p)")
    o, z = pair.one, pair.zero
    lhs = reversed_charpoly(wedge2(induction_matrix(pair), z), o, z)
    As = asai_matrix(pair)
    if omega_KQ == -1:
        As = [[-x for x in r] for r in As]
    rhs = poly_mul(reversed_charpoly(As, o, z), reversed_charpoly(induced_det_matrix(pair), o, z), z)
    central = None
    if omega is not None:
        if pair.split:
            central = pair.alpha[0] * pair.alpha[1] == omega and pair.beta[0] * pair.beta[1] == omega
        else:
            central = pair.det_g() == omega * omega
    return WedgeAsaiReport(lhs == rhs, lhs, rhs, central)


def check_wedge_asai_identity(pair: LocalParameterPair, omega_KQ: int, omega=None) -> bool:
    return wedge_asai_report(pair, omega_KQ, omega).identity
