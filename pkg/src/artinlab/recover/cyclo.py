"""The finite set Y of polynomials prod (1 - zeta_i T) with roots of unity of
order below A, its restriction to a coefficient field K, and admissible primes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, gcd, lcm

from ..arith import qpoly as qp
from ..arith.finite_field import is_prime
from ..arith.numfield import AlgebraicNumber, NumberField, reduce_mod_place
from ..errors import BadReductionError, EnumerationOverflow, ExhaustedSearchError, InputError

Y_CAP = 2_000_000
MAX_CYCLO_DEGREE = 64


def totient(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def roots_of_unity(A: int) -> list[Fraction]:
    """exp(2 pi i k/d) for d < A, gcd(k, d) = 1, as k/d in [0, 1); ordered by (d, k)."""
    out = []
    for d in range(1, A):
        for k in range(d):
            if gcd(k, d) == 1:
                out.append(Fraction(k, d))
    return out


def _rev_cyclotomic(d: int) -> tuple[int, ...]:
    """prod over primitive d-th roots of (1 - zeta T)."""
    return tuple(reversed(qp.cyclotomic_poly(d)))


def _int_poly_mul(f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return tuple(out)


@dataclass(frozen=True)
class CycloCharPoly:
    roots: tuple  # sorted k/d in [0, 1)
    coeffs: tuple | None = None  # low-to-high, AlgebraicNumbers of the field in use, or ints

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(r.denominator for r in self.roots)

    @property
    def degree(self) -> int:
        return len(self.roots)

    @property
    def is_rational(self) -> bool:
        return is_galois_stable(self.roots)

    def integer_coeffs(self) -> tuple[int, ...]:
        if not self.is_rational:
            raise InputError("polynomial does not have rational coefficients")
        mult: dict[int, int] = {}
        for r in self.roots:
            mult[r.denominator] = mult.get(r.denominator, 0) + 1
        out = (1,)
        for d, m in sorted(mult.items()):
            for _ in range(m // totient(d)):
                out = _int_poly_mul(out, _rev_cyclotomic(d))
        return out

    def label(self) -> str:
        return "*".join(f"(1-z{r.denominator}^{r.numerator}T)" for r in self.roots) or "1"

    def to_json(self):
        out = {"roots": [str(r) for r in self.roots], "orders": list(self.orders)}
        if self.coeffs is not None:
            out["coeffs"] = [c.to_json() if isinstance(c, AlgebraicNumber) else c for c in self.coeffs]
        return out


def is_galois_stable(roots) -> bool:
    counts: dict[Fraction, int] = {}
    for r in roots:
        counts[r] = counts.get(r, 0) + 1
    for r, c in counts.items():
        d = r.denominator
        for k in range(d):
            if gcd(k, d) == 1 and counts.get(Fraction(k, d), 0) != c:
                return False
    return True


@dataclass
class YSet:
    A: int
    n: int
    members: list = field(default_factory=list)
    field: NumberField | None = None  # None: all of Y, else Y cap K[T]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def to_json(self):
        return {
            "A": self.A,
            "n": self.n,
            "field": None if self.field is None else list(self.field.defining_poly),
            "size": len(self.members),
            "members": [m.to_json() for m in self.members],
        }


def y_size(A: int, n: int) -> int:
    return comb(len(roots_of_unity(A)) + n - 1, n)


def enumerate_Y(A: int, n: int, cap: int = Y_CAP) -> YSet:
    """All prod_{i<=n} (1 - zeta_i T) with ord(zeta_i) < A (coefficients left implicit)."""
    if A < 2 or n < 1:
        raise InputError("need A >= 2 and n >= 1")
    R = roots_of_unity(A)
    size = comb(len(R) + n - 1, n)
    if size > cap:
        raise EnumerationOverflow(f"|Y| = {size} exceeds cap {cap}")
    return YSet(A, n, [CycloCharPoly(tuple(c)) for c in combinations_with_replacement(R, n)])


# -- restriction to K ------------------------------------------------------------------------


def _cyclo_field(L: int):
    """(field C, zeta_L as an element of C) for a catalog cyclotomic field C."""
    if L % 4 == 2:
        h = L // 2
        C = NumberField.cyclotomic(h) if h > 2 else NumberField.rationals()
        z = C.gen() if h > 2 else C.one()
        zeta = -(z ** ((h + 1) // 2)) if h > 1 else -C.one()
        return C, zeta
    C = NumberField.cyclotomic(L) if L > 2 else NumberField.rationals()
    return C, (C.gen() if L > 2 else (-C.one() if L == 2 else C.one()))


def _in_field_coords(x: AlgebraicNumber, basis: list[AlgebraicNumber]) -> list[Fraction] | None:
    """Solve x = sum c_k basis_k over Q; None if x is outside the span."""
    r = len(basis)
    d = len(x.coords)
    rows = [[basis[k].coords[i] for k in range(r)] + [x.coords[i]] for i in range(d)]
    piv_cols = []
    row = 0
    for col in range(r):
        piv = next((i for i in range(row, d) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[row], rows[piv] = rows[piv], rows[row]
        inv = 1 / rows[row][col]
        rows[row] = [v * inv for v in rows[row]]
        for i in range(d):
            if i != row and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[row])]
        piv_cols.append(col)
        row += 1
    if any(rows[i][r] != 0 for i in range(row, d)):
        return None
    sol = [Fraction(0)] * r
    for i, col in enumerate(piv_cols):
        sol[col] = rows[i][r]
    return sol


def _power(x, e, one):
    out = one
    for _ in range(e):
        out = out * x
    return out


@lru_cache(maxsize=None)
def _restricted(A: int, n: int, K: NumberField) -> YSet:
    R = roots_of_unity(A)
    L0 = 1
    for r in R:
        L0 = lcm(L0, r.denominator)
    if K.degree == 1:
        return _restricted_rational(A, n, K, R)
    emb = K.conductor_embedding
    if emb is None:
        raise InputError(f"{K.label} is not a catalog abelian field; cannot restrict Y to it")
    m, s_coords = emb
    L = lcm(L0, m)
    if totient(L) > MAX_CYCLO_DEGREE:
        raise EnumerationOverflow(f"restricting Y to {K.label} needs Q(zeta_{L}) of degree {totient(L)}")
    C, zeta = _cyclo_field(L)
    Cm, _ = _cyclo_field(m)
    # generator of K inside C
    s_in_m = Cm(list(s_coords))
    s = C.zero()
    zm = _power(zeta, L // m, C.one())
    for k, c in enumerate(s_in_m.coords):
        if c:
            s = s + _power(zm, k, C.one()) * c
    powers = [_power(s, k, C.one()) for k in range(K.degree)]
    # H = Gal(Q(zeta_L)/K) as units a mod L
    H = []
    for a in range(1, L + 1):
        if gcd(a, L) != 1:
            continue
        img = C.zero()
        for k, c in enumerate(s_in_m.coords):
            if c:
                img = img + _power(zm, (k * a) % m, C.one()) * c
        if img == s:
            H.append(a % L)
    # H-orbits on roots of order < A
    seen, orbits = set(), []
    for r in R:
        if r in seen:
            continue
        e = r.numerator * (L // r.denominator)
        orb = sorted({Fraction((e * a) % L, L) for a in H})
        seen.update(orb)
        orbits.append(tuple(orb))
    zpow = [_power(zeta, j, C.one()) for j in range(L)]

    def orbit_poly(orb):
        out = [C.one()]
        for r in orb:
            z = zpow[(r.numerator * (L // r.denominator)) % L]
            out = [a - (z * b if b is not None else C.zero()) for a, b in zip(out + [C.zero()], [None] + out)]
        return out

    opolys = [orbit_poly(o) for o in orbits]
    members = []
    for combo in _orbit_combinations([len(o) for o in orbits], n):
        roots, poly = [], [C.one()]
        for idx, mult in combo:
            for _ in range(mult):
                roots.extend(orbits[idx])
                f = opolys[idx]
                nxt = [C.zero()] * (len(poly) + len(f) - 1)
                for i, a in enumerate(poly):
                    for j, b in enumerate(f):
                        nxt[i + j] = nxt[i + j] + a * b
                poly = nxt
        coeffs = []
        for c in poly:
            sol = _in_field_coords(c, powers)
            if sol is None:
                raise AssertionError("orbit polynomial coefficient outside K")  # pragma: no cover
            coeffs.append(K(sol))
        members.append(CycloCharPoly(tuple(sorted(roots)), tuple(coeffs)))
    members.sort(key=lambda m: m.roots)
    return YSet(A, n, members, K)


def _orbit_combinations(sizes, n):
    """Multisets of orbit indices with sum of sizes = n, as [(idx, mult)]."""
    out = []

    def rec(i, left, acc):
        if left == 0:
            out.append(list(acc))
            return
        if i == len(sizes):
            return
        rec(i + 1, left, acc)
        for mult in range(1, left // sizes[i] + 1):
            acc.append((i, mult))
            rec(i + 1, left - mult * sizes[i], acc)
            acc.pop()

    rec(0, n, [])
    return out


def _restricted_rational(A, n, K, R):
    orders = sorted({r.denominator for r in R})
    sizes = [totient(d) for d in orders]
    members = []
    for combo in _orbit_combinations(sizes, n):
        roots, poly = [], (1,)
        for idx, mult in combo:
            d = orders[idx]
            for _ in range(mult):
                roots.extend(r for r in R if r.denominator == d)
                poly = _int_poly_mul(poly, _rev_cyclotomic(d))
        members.append(CycloCharPoly(tuple(sorted(roots)), tuple(K([c]) for c in poly)))
    members.sort(key=lambda m: m.roots)
    return YSet(A, n, members, K)


def restrict_Y(A: int, n: int, K: NumberField) -> YSet:
    """Y cap K[T]: members whose root multiset is stable under Gal(Q(zeta)/K)."""
    if A < 2 or n < 1:
        raise InputError("need A >= 2 and n >= 1")
    return _restricted(A, n, K)


# -- admissible primes ----------------------------------------------------------------------


@dataclass(frozen=True)
class AdmissiblePrime:
    ell: int
    root: int  # place of K: the generator maps to root mod ell

    def to_json(self):
        return {"ell": self.ell, "root": self.root}


def reduce_member(member: CycloCharPoly, ell: int, root: int) -> tuple[int, ...]:
    return tuple(int(reduce_mod_place(c, ell, root)) for c in member.coeffs)


def reduction_index(Y: YSet, ell: int, root: int) -> dict | None:
    """Reduced coefficient tuple -> member index; None when reduction is not injective."""
    idx = {}
    for i, m in enumerate(Y.members):
        key = reduce_member(m, ell, root)
        if key in idx:
            return None
        idx[key] = i
    return idx


def is_admissible(Y: YSet, ell: int, root: int) -> bool:
    if Y.field is None:
        raise InputError("restrict Y to a coefficient field first (restrict_Y)")
    if not is_prime(ell) or ell <= Y.A:
        return False
    try:
        return reduction_index(Y, ell, root) is not None
    except BadReductionError:
        return False


def admissible_primes(K: NumberField, A: int, Y: YSet | None = None, search_bound: int = 200, n: int | None = None, limit: int | None = None) -> list[AdmissiblePrime]:
    """Primes ell in (A, search_bound] that split completely in K and separate Y cap K[T]."""
    if Y is None:
        if n is None:
            raise InputError("need Y or n")
        Y = restrict_Y(A, n, K)
    elif Y.field is None or Y.field != K:
        Y = restrict_Y(A, Y.n, K)
    if search_bound < A:
        raise InputError("search bound must be at least A")
    out = []
    for ell in range(A + 1, search_bound + 1):
        if not is_prime(ell) or not K.splits_completely(ell):
            continue
        roots = K.simple_roots_mod(ell)
        if not roots:
            continue
        r = min(roots)
        if is_admissible(Y, ell, r):
            out.append(AdmissiblePrime(ell, r))
            if limit and len(out) >= limit:
                break
    if not out:
        raise ExhaustedSearchError(f"no admissible prime in ({A}, {search_bound}]; try a larger bound")
    return out
