"""Synthetic Artin data from explicit finite Galois groups.

Each example knows det(1 - rho(Frob_p) T) exactly for unramified p, read off
from the factorization of a defining polynomial mod p (or a character value),
together with an explicit image of rho over F_ell for the lifting step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..arith.finite_field import is_prime
from ..arith.numfield import NumberField, reduce_mod_place
from ..errors import InputError
from ..matgroup.group import close_group
from ..satake.system import primes_up_to
from .tables import ModLFrobTable


def _pmod(a, f, p):
    a = [x % p for x in a]
    inv = pow(f[-1], -1, p)
    while len(a) >= len(f):
        c = a[-1] * inv % p
        shift = len(a) - len(f)
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _pmulmod(a, b, f, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, f, p)


def _pgcd_degree(a, b, p) -> int:
    while b:
        a, b = b, _pmod(a, b, p)
    return len(a) - 1


def _root_count(f_coeffs, p: int) -> int:
    """Number of distinct roots of f in F_p: deg gcd(f, x^p - x)."""
    f = [x % p for x in f_coeffs]
    while f and f[-1] == 0:
        f.pop()
    result, base, e = [1], [0, 1], p
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    xp_minus_x = result + [0] * max(0, 2 - len(result))
    xp_minus_x[1] = (xp_minus_x[1] - 1) % p
    while xp_minus_x and xp_minus_x[-1] == 0:
        xp_minus_x.pop()
    if not xp_minus_x:
        return len(f) - 1
    return _pgcd_degree(f, xp_minus_x, p)


@dataclass(frozen=True)
class ArtinExample:
    name: str
    K: NumberField
    A: int
    n: int
    excluded: frozenset
    frob: Callable  # p -> tuple of K-elements, det(1 - rho(Frob_p) T) low-to-high
    image_gens: Callable  # ell -> generator matrices over F_ell
    conjugation: tuple  # det(1 - rho(c) T) as integers

    def hecke_poly(self, p: int):
        if p in self.excluded or not is_prime(p):
            raise InputError(f"p = {p} is excluded or not prime")
        return self.frob(p)

    def image(self, ell: int):
        return close_group(self.image_gens(ell), ell)

    def table(self, ell: int, P: int, root: int | None = None) -> ModLFrobTable:
        if root is None:
            root = min(self.K.simple_roots_mod(ell)) if self.K.degree > 1 else 1
        t = ModLFrobTable(ell, self.K, root, self.excluded)
        for p in primes_up_to(P):
            if p == ell or p in self.excluded:
                continue
            t.add(p, [int(reduce_mod_place(c, ell, t.root)) for c in self.frob(p)])
        return t


def _rational(K, coeffs):
    return tuple(K([c]) for c in coeffs)


def trivial_example(n: int = 2, A: int = 2) -> ArtinExample:
    """rho = n copies of the trivial character: H_p = (1 - T)^n."""
    Q = NumberField.rationals()
    from math import comb

    coeffs = tuple((-1) ** k * comb(n, k) for k in range(n + 1))
    return ArtinExample(
        "trivial",
        Q,
        A,
        n,
        frozenset(),
        lambda p: _rational(Q, coeffs),
        lambda ell: [[[int(i == j) for j in range(n)] for i in range(n)]],
        coeffs,
    )


def c4_example() -> ArtinExample:
    """The quartic character of (Z/5)^x: chi(2) = i, so H_p = 1 - chi(p) T over Q(i)."""
    K = NumberField.cyclotomic(4)
    i = K.gen()
    powers = [K.one(), i, -K.one(), -i]
    log2 = {1: 0, 2: 1, 4: 2, 3: 3}

    def frob(p):
        return (K.one(), -powers[log2[p % 5]])

    def gens(ell):
        # image of chi mod ell: a primitive 4th root of unity in F_ell
        if (ell - 1) % 4:
            raise InputError("need ell = 1 mod 4")
        r = min(K.simple_roots_mod(ell))
        return [[[r]]]

    # complex conjugation is Frob_{-1}: chi(-1) = chi(4) = -1
    return ArtinExample("C4", K, 5, 1, frozenset({5}), frob, gens, (1, 1))


def s3_example() -> ArtinExample:
    """The 2-dimensional representation of Gal(Q(2^(1/3), zeta_3)/Q) = S_3."""
    Q = NumberField.rationals()
    polys = {3: (1, -2, 1), 1: (1, 0, -1), 0: (1, 1, 1)}

    def frob(p):
        return _rational(Q, polys[_root_count((-2, 0, 0, 1), p)])

    def gens(ell):
        return [[[0, 1], [1, 0]], [[0, ell - 1], [1, ell - 1]]]

    return ArtinExample("S3", Q, 7, 2, frozenset({2, 3}), frob, gens, (1, 0, -1))


def a4_example() -> ArtinExample:
    """The 3-dimensional representation of the A_4 splitting field of x^4 + 8x + 12."""
    Q = NumberField.rationals()
    polys = {4: (1, -3, 3, -1), 0: (1, 1, -1, -1), 1: (1, 0, 0, -1)}

    def frob(p):
        c = _root_count((12, 8, 0, 0, 1), p)
        return _rational(Q, polys[c])

    def gens(ell):
        return [[[0, 0, 1], [1, 0, 0], [0, 1, 0]], [[1, 0, 0], [0, ell - 1, 0], [0, 0, ell - 1]]]

    # complex conjugation: x^4 + 8x + 12 has no real roots, so c is a double transposition
    return ArtinExample("A4", Q, 13, 3, frozenset({2, 3}), frob, gens, (1, 1, -1, -1))


EXAMPLES = {"trivial": trivial_example, "C4": c4_example, "S3": s3_example, "A4": a4_example}


def corrupt(table: ModLFrobTable, p: int) -> ModLFrobTable:
    """Copy of ``table`` with the T-coefficient at p shifted by one."""
    out = ModLFrobTable(table.ell, table.K, table.root, table.excluded, dict(table.entries))
    c = list(out.entries[p])
    c[1] = (c[1] + 1) % table.ell
    out.entries[p] = tuple(c)
    return out
