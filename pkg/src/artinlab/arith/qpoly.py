"""Dense univariate polynomials over Q, stored low-to-high as tuples of Fractions.

The empty tuple is the zero polynomial.  Every function returns normalized
tuples (no trailing zeros).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import zip_longest

QPoly = tuple  # tuple[Fraction, ...]


def qpoly(coeffs) -> QPoly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(f: QPoly) -> int:
    return len(f) - 1


def add(f: QPoly, g: QPoly) -> QPoly:
    return qpoly(a + b for a, b in zip_longest(f, g, fillvalue=0))


def sub(f: QPoly, g: QPoly) -> QPoly:
    return qpoly(a - b for a, b in zip_longest(f, g, fillvalue=0))


def scale(f: QPoly, c) -> QPoly:
    return qpoly(a * c for a in f)


def mul(f: QPoly, g: QPoly) -> QPoly:
    if not f or not g:
        return ()
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return qpoly(out)


def divmod_(f: QPoly, g: QPoly) -> tuple[QPoly, QPoly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    lead = g[-1]
    if len(r) - 1 < dg:
        return (), qpoly(r)
    q = [Fraction(0)] * (len(r) - dg)
    for k in range(len(r) - 1 - dg, -1, -1):
        c = r[k + dg] / lead
        q[k] = c
        if c:
            for j in range(dg + 1):
                r[k + j] -= c * g[j]
    return qpoly(q), qpoly(r[:dg])


def mod(f: QPoly, g: QPoly) -> QPoly:
    return divmod_(f, g)[1]


def monic(f: QPoly) -> QPoly:
    if not f:
        return f
    return scale(f, 1 / f[-1])


def gcd(f: QPoly, g: QPoly) -> QPoly:
    while g:
        f, g = g, mod(f, g)
    return monic(f)


def xgcd(f: QPoly, g: QPoly) -> tuple[QPoly, QPoly, QPoly]:
    """Return (d, s, t) with s*f + t*g = d = monic gcd."""
    r0, r1 = f, g
    s0, s1 = qpoly([1]), ()
    t0, t1 = (), qpoly([1])
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return r0, s0, t0
    c = 1 / r0[-1]
    return scale(r0, c), scale(s0, c), scale(t0, c)


def derivative(f: QPoly) -> QPoly:
    return qpoly(i * c for i, c in enumerate(f) if i)


def evaluate(f: QPoly, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def from_roots_symmetric(values) -> list:
    """Elementary symmetric functions e_0..e_n of ``values`` (any ring)."""
    e = [1]
    for v in values:
        nxt = list(e) + [0]
        for k in range(len(e), 0, -1):
            nxt[k] = nxt[k] + e[k - 1] * v
        e = nxt
    return e


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, low-to-high."""
    num = qpoly([-1] + [0] * (m - 1) + [1])
    for d in range(1, m):
        if m % d == 0:
            num = divmod_(num, qpoly(cyclotomic_poly(d)))[0]
    return tuple(int(c) for c in num)
