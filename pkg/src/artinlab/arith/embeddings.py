"""Certified enclosures of |sigma(a)|^2 over all complex embeddings sigma.

Roots of the defining polynomial are approximated with mpmath, rounded to dyadic
rationals, and certified with Smith's disc theorem evaluated in exact rational
arithmetic: for a monic degree-d polynomial f and distinct approximations z_i,
every root lies in the union of the discs D(z_i, d |f(z_i)| / prod_{j!=i} |z_i - z_j|),
and when the discs are pairwise disjoint each one holds exactly one root.
Everything downstream of the approximations is exact, so the returned
intervals are rigorous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import mpmath

from ..errors import RefinementError
from .numfield import AlgebraicNumber, NumberField

MAX_LEVEL = 4096


@dataclass(frozen=True)
class CertifiedInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "CertifiedInterval":
        x = Fraction(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "CertifiedInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersect(self, other: "CertifiedInterval") -> "CertifiedInterval":
        return CertifiedInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def __add__(self, other: "CertifiedInterval") -> "CertifiedInterval":
        return CertifiedInterval(self.lo + other.lo, self.hi + other.hi)

    def scale_nonneg(self, lo_factor, hi_factor) -> "CertifiedInterval":
        """Product with an interval [lo_factor, hi_factor] when both are >= 0."""
        return CertifiedInterval(self.lo * lo_factor, self.hi * hi_factor)

    def to_json(self):
        return {"lo": str(self.lo), "hi": str(self.hi), "lo_float": float(self.lo), "hi_float": float(self.hi)}


def sqrt_bounds(x: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Rational lo <= sqrt(x) <= hi with hi - lo <= 2^-bits."""
    if x < 0:
        raise ValueError("sqrt of negative number")
    scale = 1 << bits
    y = x * scale * scale
    fl = isqrt(y.numerator // y.denominator)
    lo = Fraction(fl, scale)
    if Fraction(fl * fl) == y:
        return lo, lo
    return lo, Fraction(fl + 1, scale)


# -- exact complex arithmetic on (re, im) Fraction pairs -----------------------


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _csub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _abs2(a):
    return a[0] * a[0] + a[1] * a[1]


def _horner(coeffs, z):
    acc = (Fraction(0), Fraction(0))
    for c in reversed(coeffs):
        acc = _cmul(acc, z)
        acc = (acc[0] + c, acc[1])
    return acc


def _dyadic(x: mpmath.mpf, bits: int) -> Fraction:
    return Fraction(int(mpmath.nint(x * (1 << bits))), 1 << bits)


@dataclass(frozen=True)
class RootDisc:
    center: tuple[Fraction, Fraction]
    radius: Fraction  # rational upper bound (0 when the center is an exact root)


@lru_cache(maxsize=256)
def root_discs(K: NumberField, bits: int) -> tuple[RootDisc, ...]:
    """Disjoint certified discs, one per complex root, centers on a 2^-bits grid.

    Ordered by (real part, imaginary part) of the centers, which is a stable
    labelling of the embeddings for all sufficiently large ``bits``.
    """
    f = K.defining_poly
    d = len(f) - 1
    if d == 1:
        return (RootDisc((Fraction(-f[0]), Fraction(0)), Fraction(0)),)
    with mpmath.workprec(bits + 64):
        try:
            roots = mpmath.polyroots(list(reversed(f)), maxsteps=400, extraprec=2 * bits + 64)
        except mpmath.libmp.NoConvergence as exc:  # pragma: no cover
            raise RefinementError(f"root isolation failed for {K.label}") from exc
        centers = [(_dyadic(mpmath.re(z), bits), _dyadic(mpmath.im(z), bits)) for z in roots]
    centers.sort()
    if len(set(centers)) < d:
        raise RefinementError(f"roots of {K.label} not separated at {bits} bits")
    discs = []
    for i, z in enumerate(centers):
        fz2 = _abs2(_horner([Fraction(c) for c in f], z))
        if fz2 == 0:
            discs.append(RootDisc(z, Fraction(0)))
            continue
        w2 = Fraction(1)
        for j, u in enumerate(centers):
            if j != i:
                w2 *= _abs2(_csub(z, u))
        r2 = d * d * fz2 / w2
        discs.append(RootDisc(z, sqrt_bounds(r2, bits + 8)[1]))
    for i in range(d):
        for j in range(i + 1, d):
            s = discs[i].radius + discs[j].radius
            if _abs2(_csub(discs[i].center, discs[j].center)) <= s * s:
                raise RefinementError(f"root discs of {K.label} overlap at {bits} bits")
    return tuple(discs)


def _certified_discs(K: NumberField, bits: int) -> tuple[RootDisc, ...]:
    b = bits
    while True:
        try:
            return root_discs(K, b)
        except RefinementError:
            b *= 2
            if b > MAX_LEVEL:
                raise


def _abs_sq_enclosure(a: AlgebraicNumber, disc: RootDisc, bits: int) -> CertifiedInterval:
    coeffs = a.coords
    z = disc.center
    val = _horner(coeffs, z)
    S = _abs2(val)
    if disc.radius == 0:
        return CertifiedInterval.point(S)
    r = disc.radius
    # |z_i| <= rho, then |a(w) - a(z_i)| <= sum |c_k| ((rho + r)^k - rho^k) on the disc
    rho = sqrt_bounds(_abs2(z), bits + 8)[1]
    delta = Fraction(0)
    for k, c in enumerate(coeffs):
        if k and c:
            delta += abs(c) * ((rho + r) ** k - rho**k)
    sl, su = sqrt_bounds(S, bits + 8)
    lo = max(Fraction(0), sl - delta)
    return CertifiedInterval(lo * lo, (su + delta) ** 2)


def _level_bits(a: AlgebraicNumber, level: int) -> int:
    size = max((abs(c) for c in a.coords), default=Fraction(0))
    mag = max(1, int(size).bit_length()) if size else 1
    return level + 2 * mag * a.field.degree + 16


def _single_level(a: AlgebraicNumber, level: int) -> list[CertifiedInterval]:
    target = Fraction(1, 1 << level)
    bits = _level_bits(a, level)
    while True:
        discs = _certified_discs(a.field, bits)
        out = [_abs_sq_enclosure(a, d, bits) for d in discs]
        if all(iv.width <= target for iv in out):
            return out
        bits *= 2
        if bits > MAX_LEVEL:
            raise RefinementError(f"could not reach precision {level} for {a}")


def embed_abs_sq_bounds(a: AlgebraicNumber, precision: int) -> list[CertifiedInterval]:
    """Enclosures of |sigma_i(a)|^2, each of width <= 2^-precision.

    The result at precision k+1 is contained in the result at precision k: the
    returned interval is the intersection of the enclosures for levels 1..k.
    """
    if precision < 1:
        raise ValueError("precision must be positive")
    if a.field.degree == 1:
        v = a.coords[0]
        return [CertifiedInterval.point(v * v)]
    acc = None
    for level in range(1, precision + 1):
        cur = _single_level(a, level)
        acc = cur if acc is None else [x.intersect(y) for x, y in zip(acc, cur)]
    return acc


def embedding_values(a: AlgebraicNumber, dps: int = 30) -> list[complex]:
    """Floating images of ``a`` under the embeddings (display / diagnostics only)."""
    discs = _certified_discs(a.field, 4 * dps)
    out = []
    for d in discs:
        re, im = _horner(a.coords, d.center)
        out.append(complex(float(re), float(im)))
    return out


def abs_sq_exceeds(a: AlgebraicNumber, c, max_bits: int = 512) -> list[bool | None]:
    """For each embedding decide |sigma(a)|^2 > c.

    Returns True/False where certified; None where the enclosure still
    straddles ``c`` at ``max_bits``.  An exact equality |sigma(a)|^2 = c is
    detected algebraically when complex conjugation on the field is known.
    """
    c = Fraction(c)
    K = a.field
    d = K.degree
    if d == 1:
        v = a.coords[0]
        return [v * v > c]
    equal_everywhere = False
    if K.conjugation is not None:
        b = a * a.conjugate()
        if b == c:
            equal_everywhere = True
    if equal_everywhere:
        return [False] * d
    decided: list[bool | None] = [None] * d
    bits = _level_bits(a, 16)
    while bits <= max_bits:
        discs = _certified_discs(K, bits)
        for i, disc in enumerate(discs):
            if decided[i] is None:
                iv = _abs_sq_enclosure(a, disc, bits)
                if iv.lo > c:
                    decided[i] = True
                elif iv.hi <= c:
                    decided[i] = False
        if all(x is not None for x in decided):
            break
        bits *= 2
    return decided


def abs_sq_upper(a: AlgebraicNumber, bits: int = 64) -> list[CertifiedInterval]:
    """One-shot enclosures (not nested); cheaper than :func:`embed_abs_sq_bounds`."""
    if a.field.degree == 1:
        v = a.coords[0]
        return [CertifiedInterval.point(v * v)]
    discs = _certified_discs(a.field, _level_bits(a, bits))
    return [_abs_sq_enclosure(a, d, _level_bits(a, bits)) for d in discs]
