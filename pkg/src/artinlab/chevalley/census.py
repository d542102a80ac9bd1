"""Classical groups SL_m(F_q) and Sp_2m(F_q): orders, generators, and the
semisimple-class counting formula M_G(A) = q^(d-l) |G| / |C(A)|."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd, isqrt

import numpy as np

from ..arith import fq_linalg as la
from ..arith.finite_field import field as gf, prime_power
from ..errors import InputError
from ..matgroup.group import (
    DEFAULT_CAP,
    FiniteMatrixGroup,
    block_diagonal,
    charpoly_histogram,
    close_group,
)

FAMILIES = ("SL", "Sp")


@dataclass(frozen=True)
class ChevalleySpec:
    family: str
    n: int  # degree of the natural representation
    q: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown family {self.family!r}")
        prime_power(self.q)
        if self.n < 2 or (self.family == "Sp" and self.n % 2):
            raise InputError(f"bad degree {self.n} for {self.family}")

    @classmethod
    def parse(cls, text: str) -> "ChevalleySpec":
        """'SL2(5)', 'SL_3(2)', 'Sp4(3)'."""
        t = text.replace("_", "").replace(" ", "")
        for fam in FAMILIES:
            if t.startswith(fam):
                rest = t[len(fam) :]
                try:
                    n_str, q_str = rest.rstrip(")").split("(")
                    return cls(fam, int(n_str), int(q_str))
                except ValueError:
                    break
        raise InputError(f"cannot parse group spec {text!r}; expected e.g. SL2(5) or Sp4(3)")

    @property
    def label(self) -> str:
        return f"{self.family}{self.n}({self.q})"

    @property
    def p(self) -> int:
        return prime_power(self.q)[0]

    @property
    def rank(self) -> int:
        return self.n - 1 if self.family == "SL" else self.n // 2

    @property
    def dim(self) -> int:
        if self.family == "SL":
            return self.n * self.n - 1
        m = self.n // 2
        return 2 * m * m + m

    @property
    def order(self) -> int:
        q = self.q
        if self.family == "SL":
            m = self.n
            o = q ** (m * (m - 1) // 2)
            for i in range(2, m + 1):
                o *= q**i - 1
            return o
        m = self.n // 2
        o = q ** (m * m)
        for i in range(1, m + 1):
            o *= q ** (2 * i) - 1
        return o

    @property
    def center_order(self) -> int:
        if self.family == "SL":
            return gcd(self.n, self.q - 1)
        return gcd(2, self.q - 1)

    def to_json(self):
        return {
            "family": self.family,
            "n": self.n,
            "q": self.q,
            "rank": self.rank,
            "dim": self.dim,
            "order": self.order,
        }


# -- forms and generators -------------------------------------------------------


def symplectic_form(n: int, q: int) -> np.ndarray:
    """J = antidiag(1, ..., 1, -1, ..., -1)."""
    F = gf(q)
    J = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        J[i, n - 1 - i] = 1 if i < n // 2 else F.neg(1)
    return J


def block_change_of_basis(n: int, q: int) -> np.ndarray:
    """P with P^t J P = [[0, I], [-I, 0]] for the antidiagonal J.

    The columns are e_1..e_m, e_n, e_(n-1), .., e_(m+1).
    """
    m = n // 2
    order = list(range(m)) + [n - 1 - i for i in range(m)]
    P = np.zeros((n, n), dtype=np.int64)
    for col, row in enumerate(order):
        P[row, col] = 1
    return P


def to_block_form(g: np.ndarray, q: int) -> np.ndarray:
    """The matrix of g in the basis where the form is [[0, I], [-I, 0]]."""
    F = gf(q)
    P = block_change_of_basis(g.shape[0], q)
    Pinv = np.asarray(la.inverse(F, P.tolist()), dtype=np.int64)
    return F.matmul(F.matmul(Pinv, g), P)


def _fp_basis(q: int) -> list[int]:
    p, k = prime_power(q)
    return [p**i for i in range(k)]


def standard_generators(spec: ChevalleySpec) -> list[np.ndarray]:
    F = gf(spec.q)
    n = spec.n
    gens = []
    if spec.family == "SL":
        # elementary transvections x_ij(a), a over an F_p-basis of F_q
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for a in _fp_basis(spec.q):
                    g = np.eye(n, dtype=np.int64)
                    g[i, j] = a
                    gens.append(g)
        return gens
    J = symplectic_form(n, spec.q)
    vecs = []
    for i in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        vecs.append(e)
    for i in range(n):
        for j in range(i + 1, n):
            e = np.zeros(n, dtype=np.int64)
            e[i] = e[j] = 1
            vecs.append(e)
    for v in vecs:
        vJ = F.matmul(v[None, :], J)  # 1 x n
        outer = F.matmul(v[:, None], vJ)
        for a in _fp_basis(spec.q):
            # x -> x + a <v, x> v preserves x^t J y
            gens.append(F.ADD[np.eye(n, dtype=np.int64), F.MUL[a, outer]])
    return gens


@lru_cache(maxsize=16)
def make_group(spec: ChevalleySpec, cap: int = DEFAULT_CAP) -> FiniteMatrixGroup:
    if spec.order > cap:
        from ..errors import EnumerationOverflow

        raise EnumerationOverflow(f"{spec.label} has order {spec.order} > cap {cap}")
    G = close_group(standard_generators(spec), spec.q, cap=cap, n=spec.n)
    if G.order != spec.order:  # pragma: no cover
        from ..errors import InternalConsistencyError

        raise InternalConsistencyError(f"closure order {G.order} != formula {spec.order} for {spec.label}")
    return G


def preserves_form(spec: ChevalleySpec, g: np.ndarray) -> bool:
    F = gf(spec.q)
    if spec.family == "SL":
        return la.det(F, g.tolist()) == 1
    J = symplectic_form(spec.n, spec.q)
    return bool(np.array_equal(F.matmul(F.matmul(g.T, J), g), J))


# -- order bounds -------------------------------------------------------------------


def _surd_power(c: int, D: int, q: int) -> tuple[int, int]:
    """(sqrt(q) + c)^(2D) = A + B sqrt(q) with c = +-1."""
    # (sqrt q + c)^2 = (q + 1) + 2c sqrt q
    A, B = 1, 0
    a2, b2 = q + 1, 2 * c
    for _ in range(D):
        A, B = A * a2 + B * b2 * q, A * b2 + B * a2
    return A, B


def _sign_surd(a: int, b: int, q: int) -> int:
    """Sign of a + b sqrt(q)."""
    if a >= 0 and b >= 0:
        return 0 if a == 0 and b == 0 else 1
    if a <= 0 and b <= 0:
        return -1
    # opposite signs: compare a^2 with b^2 q
    lhs, rhs = a * a, b * b * q
    if lhs == rhs:
        return 0
    big_is_a = lhs > rhs
    return (1 if a > 0 else -1) if big_is_a else (1 if b > 0 else -1)


@dataclass(frozen=True)
class OrderBoundReport:
    order: int
    linear_lower: int
    linear_upper: int
    linear_ok: bool
    surd_lower: tuple  # (A, B) for A + B sqrt q
    surd_upper: tuple
    surd_ok: bool

    @property
    def ok(self) -> bool:
        return self.linear_ok and self.surd_ok

    def to_json(self):
        return {
            "order": self.order,
            "linear": [self.linear_lower, self.linear_upper, self.linear_ok],
            "surd_lower": list(self.surd_lower),
            "surd_upper": list(self.surd_upper),
            "surd_ok": self.surd_ok,
            "ok": self.ok,
        }


def order_bound_report(spec: ChevalleySpec, order: int | None = None) -> OrderBoundReport:
    q, D = spec.q, spec.dim
    o = spec.order if order is None else order
    lo, hi = (q - 1) ** D, (q + 1) ** D
    linear_ok = lo <= o <= hi
    A_lo, B_lo = _surd_power(-1, D, q)
    A_hi, B_hi = _surd_power(1, D, q)
    surd_ok = _sign_surd(o - A_lo, -B_lo, q) >= 0 and _sign_surd(A_hi - o, B_hi, q) >= 0
    return OrderBoundReport(o, lo, hi, linear_ok, (A_lo, B_lo), (A_hi, B_hi), surd_ok)


def verify_order_bounds(spec: ChevalleySpec) -> bool:
    return order_bound_report(spec).ok


# -- semisimple classes and the counting formula ---------------------------------------


def _commutant_dim(F, A: np.ndarray, extra_rows=None) -> int:
    """Dimension of {X in M_n : XA = AX} cut out by optional extra linear rows."""
    n = A.shape[0]
    rows = []
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            for c in range(n):
                row[i * n + c] = F.add(row[i * n + c], int(A[c, j]))
                row[c * n + j] = F.sub(row[c * n + j], int(A[i, c]))
            rows.append(row)
    if extra_rows:
        rows.extend(extra_rows)
    return n * n - la.rank(F, rows)


def _sp_lie_rows(F, J: np.ndarray) -> list[list[int]]:
    """Linear conditions X^t J + J X = 0 on X (row-major unknowns)."""
    n = J.shape[0]
    rows = []
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            # (X^t J)_{ij} = sum_k X_{ki} J_{kj};  (J X)_{ij} = sum_k J_{ik} X_{kj}
            for k in range(n):
                row[k * n + i] = F.add(row[k * n + i], int(J[k, j]))
                row[k * n + j] = F.add(row[k * n + j], int(J[i, k]))
            rows.append(row)
    return rows


def centralizer_dimension(spec: ChevalleySpec, A: np.ndarray) -> int:
    """dim C(A) from its Lie algebra: the fixed points of Ad(A) in Lie(G).

    For semisimple A the centralizer is smooth, so this equals the dimension
    of the algebraic group C(A).
    """
    F = gf(spec.q)
    A = np.asarray(A, dtype=np.int64)
    if spec.family == "SL":
        # centralizer in GL_n is open in the commutant; det cuts one dimension
        return _commutant_dim(F, A) - 1
    return _commutant_dim(F, A, _sp_lie_rows(F, symplectic_form(spec.n, spec.q)))


def eigenvalue_type(spec: ChevalleySpec, A: np.ndarray) -> str:
    """Centralizer type from eigenvalue multiplicities over the splitting field."""
    d, l = centralizer_dimension(spec, A), spec.rank
    if d == spec.dim:
        return "full group"
    if d == l:
        return "torus"
    return "Levi"


@dataclass(frozen=True)
class SemisimpleClassData:
    spec: ChevalleySpec
    rep_index: int
    rep: np.ndarray
    charpoly: tuple
    order: int  # element order
    class_size: int
    d: int
    l: int
    centralizer_order: int
    unipotent_observed: int
    M_observed: int

    @property
    def unipotent_predicted(self) -> int:
        return self.spec.q ** (self.d - self.l)

    @property
    def M_predicted(self) -> Fraction:
        return Fraction(self.spec.q ** (self.d - self.l) * self.spec.order, self.centralizer_order)

    def sandwich(self) -> tuple[Fraction, Fraction]:
        q, d, l, G = self.spec.q, self.d, self.l, self.spec.order
        lo = Fraction(q, q + 1) ** d * Fraction(G, q**l)
        hi = Fraction(q, q - 1) ** d * Fraction(G, q**l)
        return lo, hi

    @property
    def sandwich_ok(self) -> bool:
        lo, hi = self.sandwich()
        return lo <= self.M_observed <= hi

    def to_json(self):
        lo, hi = self.sandwich()
        return {
            "spec": self.spec.label,
            "representative": self.rep.reshape(-1).tolist(),
            "charpoly": list(self.charpoly),
            "element_order": self.order,
            "class_size": self.class_size,
            "d": self.d,
            "l": self.l,
            "centralizer_order": self.centralizer_order,
            "unipotent_observed": self.unipotent_observed,
            "unipotent_predicted": self.unipotent_predicted,
            "M_observed": self.M_observed,
            "M_predicted": str(self.M_predicted),
            "sandwich": [str(lo), str(hi)],
            "sandwich_ok": self.sandwich_ok,
        }


def _unipotent_key(n: int, q: int) -> np.ndarray:
    """Coefficient codes of (1 - T)^n."""
    F = gf(q)
    coeffs = [1]
    for _ in range(n):
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] = F.add(nxt[i], c)
            nxt[i + 1] = F.sub(nxt[i + 1], c)
        coeffs = nxt
    return np.asarray(coeffs, dtype=np.int64)


def class_data(spec: ChevalleySpec, G: FiniteMatrixGroup, A, class_size: int | None = None) -> SemisimpleClassData:
    A = np.asarray(A, dtype=np.int64)
    idx = G.index_of(A)
    if idx < 0:
        raise InputError("A is not in the group")
    order = G.element_order(A)
    if order % spec.p == 0:
        raise InputError(f"A has order {order}, divisible by p; not semisimple")
    cent = G.centralizer_indices(A)
    unip = _unipotent_key(spec.n, spec.q)
    unip_obs = int(np.all(G.charpolys[cent] == unip, axis=1).sum())
    key = G.charpolys[idx]
    M_obs = int(np.all(G.charpolys == key, axis=1).sum())
    d = centralizer_dimension(spec, A)
    size = class_size if class_size is not None else G.order // len(cent)
    return SemisimpleClassData(
        spec, int(idx), A, tuple(int(x) for x in key), order, size, d, spec.rank, len(cent), unip_obs, M_obs
    )


def steinberg_unipotent_count(spec: ChevalleySpec, A, G: FiniteMatrixGroup | None = None) -> tuple[int, int]:
    G = G or make_group(spec)
    c = class_data(spec, G, A)
    return c.unipotent_observed, c.unipotent_predicted


def verify_counting_formula(spec: ChevalleySpec, A, G: FiniteMatrixGroup | None = None):
    """(M_observed, M_predicted, sandwich_ok)."""
    G = G or make_group(spec)
    c = class_data(spec, G, A)
    return c.M_observed, c.M_predicted, c.sandwich_ok


def semisimple_classes(spec: ChevalleySpec, G: FiniteMatrixGroup | None = None) -> list[SemisimpleClassData]:
    """One entry per conjugacy class of elements of order prime to p.

    Representatives are the lexicographically smallest class members.
    """
    G = G or make_group(spec)
    orders = G.element_orders
    out = []
    for cls in G.conjugacy_classes():
        rep = int(cls[0])
        if orders[rep] % spec.p == 0:
            continue
        out.append(class_data(spec, G, G.elements[rep], class_size=len(cls)))
    return out


def census(spec: ChevalleySpec) -> list[dict]:
    return [c.to_json() for c in semisimple_classes(spec)]


# -- Levi products ----------------------------------------------------------------------


@dataclass(frozen=True)
class LeviReport:
    M_D: int
    factor_M: tuple
    C2: int
    degrees: tuple

    @property
    def bound(self) -> int:
        b = self.C2
        for m in self.factor_M:
            b *= m
        return b

    @property
    def ok(self) -> bool:
        return self.M_D <= self.bound

    def to_json(self):
        return {
            "M_D": self.M_D,
            "factor_M": list(self.factor_M),
            "C2": self.C2,
            "degrees": list(self.degrees),
            "bound": self.bound,
            "ok": self.ok,
        }


def direct_product_group(factors: list[FiniteMatrixGroup], cap: int = DEFAULT_CAP) -> FiniteMatrixGroup:
    """Block-diagonal product of groups over a common F_q."""
    if not factors:
        raise InputError("need at least one factor")
    q = factors[0].q
    if any(f.q != q for f in factors):
        raise InputError("all factors must live over the same field")
    total = 1
    for f in factors:
        total *= f.order
    if total > cap:
        from ..errors import EnumerationOverflow

        raise EnumerationOverflow(f"product order {total} exceeds cap {cap}")
    gens = []
    for i, f in enumerate(factors):
        for g in f.generators:
            blocks = [np.eye(h.n, dtype=np.int64) for h in factors]
            blocks[i] = g
            gens.append(block_diagonal(blocks))
    n = sum(f.n for f in factors)
    return close_group(gens, q, cap=cap, n=n)


def verify_levi_product_bound(factors: list[FiniteMatrixGroup], cap: int = DEFAULT_CAP) -> LeviReport:
    D = direct_product_group(factors, cap)
    M_D = charpoly_histogram(D).M
    degs = tuple(f.n for f in factors)
    C2 = factorial(sum(degs))
    for k in degs:
        C2 //= factorial(k)
    return LeviReport(M_D, tuple(charpoly_histogram(f).M for f in factors), C2, degs)


def is_perfect_square(q: int) -> bool:
    r = isqrt(q)
    return r * r == q
