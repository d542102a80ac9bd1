"""Bounded integer sets Y(c), exceptional primes X(c) and den.sup estimates."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, floor, isqrt

import mpmath
import numpy as np

from ..arith.embeddings import CertifiedInterval, abs_sq_exceeds, embedding_values
from ..arith.numfield import AlgebraicNumber, NumberField
from ..errors import EnumerationOverflow, InputError
from ..satake.system import SatakeSystem, log_inv_interval, primes_up_to

BOX_CAP = 2_000_000


def threshold_c(eta, n: int, r: int) -> Fraction:
    """r * sum_m C(n, m)^2 / eta."""
    eta = Fraction(eta)
    if eta <= 0:
        raise InputError("eta must be positive")
    if n < 1 or r < 1:
        raise InputError("n and r must be positive")
    return Fraction(r * sum(comb(n, m) ** 2 for m in range(1, n + 1))) / eta


# -- integral bases -------------------------------------------------------------------


def integral_basis(K: NumberField) -> list[AlgebraicNumber]:
    """A Z-basis of O_K for catalog fields; the power basis otherwise."""
    if K.kind == "quadratic" and K.param % 4 == 1:
        return [K.one(), (K.one() + K.gen()) / 2]
    return [K.from_poly_in_gen([0] * k + [1]) for k in range(K.degree)]


def _basis_matrix(K):
    return [list(b.coords) for b in integral_basis(K)]


def _solve_rational(A, b):
    """x with x A = b (A square, rows = basis vectors)."""
    n = len(A)
    M = [[Fraction(A[j][i]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def basis_coords(a: AlgebraicNumber) -> list[Fraction]:
    return _solve_rational(_basis_matrix(a.field), a.coords)


def is_algebraic_integer(a: AlgebraicNumber) -> bool:
    return all(x.denominator == 1 for x in basis_coords(a))


def _trace(a: AlgebraicNumber) -> Fraction:
    K = a.field
    t = Fraction(0)
    for k in range(K.degree):
        t += (a * K.from_poly_in_gen([0] * k + [1])).coords[k]
    return t


def gram_matrix(K: NumberField):
    """G_ij = Tr(b_i conj(b_j)); exact when conjugation is known, else None."""
    if K.conjugation is None:
        return None
    B = integral_basis(K)
    return [[_trace(bi * bj.conjugate()) for bj in B] for bi in B]


def _numeric_gram(K):
    B = integral_basis(K)
    vals = np.array([embedding_values(b, 30) for b in B])
    return np.real(vals @ vals.conj().T)


def _box_radii(K, c: Fraction) -> list[int]:
    r = K.degree
    G = gram_matrix(K)
    R = r * c
    if G is not None:
        radii = []
        for i in range(r):
            e = [Fraction(int(i == j)) for j in range(r)]
            col = _solve_rational(G, e)  # G symmetric
            bound = R * col[i]
            radii.append(isqrt(floor(bound)) + 1)
        return radii
    Ginv = np.linalg.inv(_numeric_gram(K))
    return [int(np.sqrt(float(R) * Ginv[i, i] * (1 + 1e-6))) + 2 for i in range(r)]


@dataclass
class BoundedIntegerSet:
    K: NumberField
    c: Fraction
    elements: list = field(default_factory=list)
    uncertain: list = field(default_factory=list)  # boundary-uncertain, included in elements

    def __len__(self):
        return len(self.elements)

    def __contains__(self, a):
        return a in self._keys

    @property
    def _keys(self):
        if not hasattr(self, "_key_cache"):
            self._key_cache = set(self.elements)
        return self._key_cache

    def to_json(self):
        return {
            "field": list(self.K.defining_poly),
            "c": str(self.c),
            "size": len(self.elements),
            "uncertain": len(self.uncertain),
            "elements": [a.to_json() for a in self.elements],
        }


def _classify_bound(a: AlgebraicNumber, c: Fraction, max_bits: int):
    """'in', 'out' or 'uncertain' for max_sigma |sigma(a)|^2 <= c."""
    flags = abs_sq_exceeds(a, c, max_bits)
    if any(f is True for f in flags):
        return "out"
    if any(f is None for f in flags):
        return "uncertain"
    return "in"


def enumerate_Y(K: NumberField, c, max_bits: int = 256) -> BoundedIntegerSet:
    """{a in O_K : |sigma(a)|^2 <= c for every embedding sigma}."""
    c = Fraction(c)
    if c < 0:
        raise InputError("c must be non-negative")
    if K.degree > 8:
        raise InputError("fields of degree > 8 are not supported")
    radii = _box_radii(K, c)
    volume = 1
    for rad in radii:
        volume *= 2 * rad + 1
    if volume > BOX_CAP:
        raise EnumerationOverflow(f"search box has {volume} points (cap {BOX_CAP})")
    B = integral_basis(K)
    grids = np.array(list(itertools.product(*[range(-rad, rad + 1) for rad in radii])), dtype=np.int64)
    G = gram_matrix(K)
    Gf = np.array([[float(x) for x in row] for row in G]) if G is not None else _numeric_gram(K)
    qf = np.einsum("ij,jk,ik->i", grids, Gf, grids)
    keep = grids[qf <= float(K.degree * c) * (1 + 1e-9) + 1e-9]
    out = BoundedIntegerSet(K, c)
    for x in keep.tolist():
        coords = [Fraction(0)] * K.degree
        for xi, b in zip(x, B):
            if xi:
                coords = [u + xi * v for u, v in zip(coords, b.coords)]
        a = K(coords)
        if G is not None and sum(
            xi * G[i][j] * xj for i, xi in enumerate(x) for j, xj in enumerate(x)
        ) > K.degree * c:
            continue
        status = _classify_bound(a, c, max_bits)
        if status == "out":
            continue
        out.elements.append(a)
        if status == "uncertain":
            out.uncertain.append(a)
    return out


def in_Y(a: AlgebraicNumber, c, max_bits: int = 256) -> bool:
    """Membership a in Y(c) without enumerating; uncertain counts as member."""
    return is_algebraic_integer(a) and _classify_bound(a, Fraction(c), max_bits) != "out"


# -- exceptional primes ---------------------------------------------------------------


@dataclass
class ExceptionalSet:
    c: Fraction
    N: int
    X: list = field(default_factory=list)
    uncertain: list = field(default_factory=list)  # straddles, pushed into X
    tuples: set = field(default_factory=set)  # (a_1(p), ..., a_n(p)) for p outside X
    integrality_gaps: list = field(default_factory=list)  # (p, m) with N a_m(p) not in Y(N^2 c)
    examined: int = 0

    def to_json(self):
        return {
            "c": str(self.c),
            "N": self.N,
            "examined": self.examined,
            "X_size": len(self.X),
            "X_head": self.X[:50],
            "uncertain": self.uncertain,
            "finite_tuple_count": len(self.tuples),
            "integrality_gaps": [list(x) for x in self.integrality_gaps],
        }


def classify_X(system: SatakeSystem, c, N: int | None = None, max_bits: int = 256, primes=None) -> ExceptionalSet:
    c = Fraction(c)
    N = system.N if N is None else N
    res = ExceptionalSet(c, N)
    for p in primes if primes is not None else system.primes:
        a = system.get(p)
        res.examined += 1
        statuses = [_classify_bound(x, c, max_bits) if not x.is_zero() else "in" for x in a]
        if "out" in statuses or "uncertain" in statuses:
            res.X.append(p)
            if "out" not in statuses:
                res.uncertain.append(p)
            continue
        res.tuples.add(a)
        for m, x in enumerate(a, start=1):
            if not is_algebraic_integer(x * N):
                res.integrality_gaps.append((p, m))
    return res


# -- den.sup -------------------------------------------------------------------------


_SCALE_BITS = 52


def _dyadic_power_sums(primes: np.ndarray, s: Fraction) -> tuple[int, int]:
    """Integer numerators (lo, hi) over 2^_SCALE_BITS enclosing sum p^-s.

    numpy's log/exp are accurate to a few ulp; a relative pad of 2^-40 covers them.
    """
    if len(primes) == 0:
        return 0, 0
    x = np.exp(-float(s) * np.log(primes.astype(np.float64)))
    pad = 2.0**-40
    lo = np.floor(np.ldexp(x * (1 - pad), _SCALE_BITS)).astype(np.int64)
    hi = np.ceil(np.ldexp(x * (1 + pad), _SCALE_BITS)).astype(np.int64) + 1
    return int(lo.sum(dtype=object)), int(hi.sum(dtype=object))


@dataclass(frozen=True)
class DensupRow:
    s: Fraction
    partial: CertifiedInterval  # sum_{p in X, p <= P} p^-s
    log_inv: CertifiedInterval  # log 1/(s-1)
    ratio: CertifiedInterval  # truncated ratio, exact bounds
    tail_weight: float  # share of primes in (P/2, P] lying in X
    tail: float  # w * E1((s-1) log P), estimate of the omitted sum
    corrected: float  # (partial + tail) / log 1/(s-1)

    def to_json(self):
        return {
            "s": str(self.s),
            "partial": self.partial.to_json(),
            "log_inv": self.log_inv.to_json(),
            "ratio_truncated": self.ratio.to_json(),
            "tail_weight": self.tail_weight,
            "tail_estimate": self.tail,
            "ratio_corrected": self.corrected,
        }


@dataclass
class DensupTable:
    P: int
    count: int
    rows: list

    def to_json(self):
        return {
            "P": self.P,
            "count_X_up_to_P": self.count,
            "note": "truncation estimate, not a limit",
            "rows": [r.to_json() for r in self.rows],
        }


def densup_estimate(X, s_grid, P: int) -> DensupTable:
    """Truncated den.sup ratios for the prime set X on a grid of s in (1, 2].

    X is a set of primes or a predicate on primes.
    """
    grid = sorted(Fraction(s) for s in s_grid)
    if any(not 1 < s <= 2 for s in grid):
        raise InputError("grid values must lie in (1, 2]")
    allp = np.array(primes_up_to(P), dtype=np.int64)
    if callable(X):
        mask = np.array([bool(X(int(p))) for p in allp], dtype=bool)
    else:
        Xs = set(int(p) for p in X)
        mask = np.isin(allp, np.array(sorted(Xs), dtype=np.int64)) if Xs else np.zeros(len(allp), bool)
    chosen = allp[mask]
    upper_half = allp > P // 2
    w = float(mask[upper_half].mean()) if upper_half.any() else 0.0
    rows = []
    scale = Fraction(1, 2**_SCALE_BITS)
    for s in grid:
        lo, hi = _dyadic_power_sums(chosen, s)
        partial = CertifiedInterval(lo * scale, hi * scale)
        L = log_inv_interval(s)
        ratio = CertifiedInterval(partial.lo / L.hi, partial.hi / L.lo)
        tail = w * float(mpmath.e1(float(s - 1) * mpmath.log(P))) if P > 1 else 0.0
        corrected = (float(partial.lo + partial.hi) / 2 + tail) / float((L.lo + L.hi) / 2)
        rows.append(DensupRow(s, partial, L, ratio, w, tail, corrected))
    return DensupTable(P, int(mask.sum()), rows)
