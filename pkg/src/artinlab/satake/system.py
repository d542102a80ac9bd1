"""Satake-parameter systems and their Hecke polynomials."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from pathlib import Path

import mpmath

from ..arith.embeddings import CertifiedInterval, abs_sq_upper
from ..arith.finite_field import factorint, is_prime
from ..arith.numfield import AlgebraicNumber, NumberField
from ..errors import AbsentDataError, InputError, InvalidAutomorphismError, SingularParameterError


def elementary_symmetric(values, zero, one) -> list:
    """[e_0, e_1, ..., e_n] of the given ring elements."""
    e = [one]
    for v in values:
        nxt = e + [zero]
        for k in range(len(e), 0, -1):
            nxt[k] = nxt[k] + e[k - 1] * v
        e = nxt
    return e


@dataclass(frozen=True)
class HeckePoly:
    """H_p(T) = 1 - a_1 T + a_2 T^2 - ... + (-1)^n a_n T^n, coefficients low-to-high."""

    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_json(self):
        return [c.to_json() for c in self.coeffs]


@dataclass
class SatakeSystem:
    n: int
    N: int
    K: NumberField
    coeffs: dict = field(default_factory=dict)  # p -> (a_1, ..., a_n)
    alphas: dict = field(default_factory=dict)  # p -> (alpha_1, ..., alpha_n), optional

    def __post_init__(self):
        if self.n < 1 or self.N < 1:
            raise InputError("n and N must be positive")

    # construction ------------------------------------------------------------
    def _check_prime(self, p: int):
        if not is_prime(p):
            raise InputError(f"{p} is not prime")
        if self.N % p == 0:
            raise InputError(f"p = {p} divides the conductor N = {self.N}")

    def add_coefficients(self, p: int, a):
        self._check_prime(p)
        a = tuple(x if isinstance(x, AlgebraicNumber) else self.K(x) for x in a)
        if len(a) != self.n:
            raise InputError(f"expected {self.n} coefficients at p = {p}, got {len(a)}")
        if a[-1].is_zero():
            raise SingularParameterError(f"central value a_n({p}) is zero")
        self.coeffs[p] = a

    def add_satake(self, p: int, alpha):
        self._check_prime(p)
        alpha = tuple(x if isinstance(x, AlgebraicNumber) else self.K(x) for x in alpha)
        if len(alpha) != self.n:
            raise InputError(f"expected {self.n} Satake parameters at p = {p}")
        if any(x.is_zero() for x in alpha):
            raise SingularParameterError(f"zero Satake parameter at p = {p}")
        e = elementary_symmetric(alpha, self.K.zero(), self.K.one())
        self.alphas[p] = alpha
        self.coeffs[p] = tuple(e[1:])

    @classmethod
    def from_satake(cls, n, N, K, table: dict) -> "SatakeSystem":
        S = cls(n, N, K)
        for p in sorted(table):
            S.add_satake(p, table[p])
        return S

    @classmethod
    def from_coefficients(cls, n, N, K, table: dict) -> "SatakeSystem":
        S = cls(n, N, K)
        for p in sorted(table):
            S.add_coefficients(p, table[p])
        return S

    @property
    def primes(self) -> list[int]:
        return sorted(self.coeffs)

    def get(self, p: int) -> tuple:
        try:
            return self.coeffs[p]
        except KeyError:
            raise AbsentDataError(f"no data at p = {p}") from None


def hecke_poly(system: SatakeSystem, p: int) -> HeckePoly:
    a = system.get(p)
    out = [system.K.one()]
    for m, am in enumerate(a, start=1):
        out.append(am if m % 2 == 0 else -am)
    return HeckePoly(tuple(out))


def exterior_coeffs(system: SatakeSystem, p: int, m: int) -> AlgebraicNumber:
    if not 1 <= m <= system.n:
        raise InputError(f"m must lie in [1, {system.n}]")
    return system.get(p)[m - 1]


def check_duality(system: SatakeSystem, p: int, m: int) -> bool:
    """e_m(alpha) = e_(n-m)(alpha^-1) e_n(alpha)."""
    if p not in system.alphas:
        if p in system.coeffs:
            raise AbsentDataError(f"duality needs Satake parameters at p = {p}; only coefficients stored")
        raise AbsentDataError(f"no data at p = {p}")
    return duality_holds(system.alphas[p], m, system.K)


def duality_holds(alpha, m: int, K: NumberField) -> bool:
    n = len(alpha)
    if not 0 <= m <= n:
        raise InputError("m out of range")
    if any(x.is_zero() for x in alpha):
        raise SingularParameterError("zero Satake parameter")
    e = elementary_symmetric(alpha, K.zero(), K.one())
    einv = elementary_symmetric([x.inverse() for x in alpha], K.zero(), K.one())
    return e[m] == einv[n - m] * e[n]


def galois_conjugate(system: SatakeSystem, image) -> SatakeSystem:
    """Apply the automorphism sending the generator of K to ``image``."""
    K = system.K
    img = image if isinstance(image, AlgebraicNumber) else K(image)
    if not K.is_root(img):
        raise InvalidAutomorphismError(f"{img} is not a root of the defining polynomial of {K.label}")
    out = SatakeSystem(system.n, system.N, K)
    for p, a in system.coeffs.items():
        out.coeffs[p] = tuple(x.apply_automorphism(img) for x in a)
    for p, al in system.alphas.items():
        out.alphas[p] = tuple(x.apply_automorphism(img) for x in al)
    return out


def _divides_power_of(den: int, N: int) -> bool:
    return all(N % r == 0 for r in factorint(den)) if den > 1 else True


def check_integrality(system: SatakeSystem, p: int) -> bool:
    """Every a_m(p) has a denominator supported on primes dividing N."""
    return all(_divides_power_of(a.denominator(), system.N) for a in system.get(p))


def is_in_OK_localized(a: AlgebraicNumber, N: int) -> bool:
    return _divides_power_of(a.denominator(), N)


# -- Rankin-Selberg partial sums ------------------------------------------------------


def _mpf_to_fraction(x) -> Fraction:
    man, exp = mpmath.mpf(x).man_exp
    return Fraction(int(man) * 2**exp) if exp >= 0 else Fraction(int(man), 2 ** (-exp))


def prime_power_neg_s(p: int, s: Fraction, prec: int = 128) -> CertifiedInterval:
    """Enclosure of p^(-s)."""
    if s.denominator == 1:
        return CertifiedInterval.point(Fraction(1, p ** int(s)))
    with mpmath.workprec(prec):
        iv = mpmath.iv.power(mpmath.iv.mpf(p), -mpmath.iv.mpf(s.numerator) / s.denominator)
        return CertifiedInterval(_mpf_to_fraction(iv.a), _mpf_to_fraction(iv.b))


def log_inv_interval(s: Fraction, prec: int = 128) -> CertifiedInterval:
    """Enclosure of log(1/(s-1))."""
    with mpmath.workprec(prec):
        x = mpmath.iv.mpf(s.numerator - s.denominator) / s.denominator
        iv = -mpmath.iv.log(x)
        return CertifiedInterval(_mpf_to_fraction(iv.a), _mpf_to_fraction(iv.b))


def primes_up_to(P: int) -> list[int]:
    import numpy as np

    if P < 2:
        return []
    sieve = np.ones(P + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(P**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.nonzero(sieve)[0].tolist()


@dataclass(frozen=True)
class RankinResult:
    m: int
    s: Fraction
    P: int
    interval: CertifiedInterval
    bound: CertifiedInterval  # C_{n,m}^2 log(1/(s-1)) + slack
    embedding: int

    @property
    def bound_check(self) -> bool:
        """Diagnostic only: the O(1) term of the pole bound is not effective."""
        return self.interval.hi <= self.bound.hi

    def to_json(self):
        return {
            "m": self.m,
            "s": str(self.s),
            "P": self.P,
            "sum": self.interval.to_json(),
            "bound": self.bound.to_json(),
            "bound_check": self.bound_check,
            "embedding": self.embedding,
        }


def rankin_partial_sum(system: SatakeSystem, m: int, s, P: int, slack=0, embedding: int = 0) -> RankinResult:
    """Enclosure of sum_{p <= P, p not | N} |sigma(a_m(p))|^2 p^(-s)."""
    s = Fraction(s)
    if s <= 1:
        raise InputError("s must exceed 1")
    if not 1 <= m <= system.n:
        raise InputError("m out of range")
    needed = [p for p in primes_up_to(P) if system.N % p]
    gaps = [p for p in needed if p not in system.coeffs]
    if gaps:
        head = ", ".join(map(str, gaps[:10]))
        raise AbsentDataError(f"missing primes ({len(gaps)}): {head}{' ...' if len(gaps) > 10 else ''}")
    lo = hi = Fraction(0)
    for p in needed:
        a = system.coeffs[p][m - 1]
        if a.is_zero():
            continue
        b = abs_sq_upper(a, 64)[embedding]
        w = prime_power_neg_s(p, s)
        lo += b.lo * w.lo
        hi += b.hi * w.hi
    C = comb(system.n, m)
    L = log_inv_interval(s)
    slack = Fraction(slack)
    bound = CertifiedInterval(C * C * L.lo + slack, C * C * L.hi + slack)
    return RankinResult(m, s, P, CertifiedInterval(lo, hi), bound, embedding)


# -- ingestion ---------------------------------------------------------------------------


def parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise InputError(f"bad rational {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational {x!r}") from exc
    if isinstance(x, list) and len(x) == 2 and all(isinstance(t, int) for t in x):
        if x[1] == 0:
            raise InputError("zero denominator")
        return Fraction(x[0], x[1])
    raise InputError(f"bad rational {x!r}")


def _parse_element(K: NumberField, raw) -> AlgebraicNumber:
    if not isinstance(raw, list):
        raw = [raw]
    coords = [parse_rational(c) for c in raw]
    if len(coords) > K.degree:
        raise InputError(f"element has {len(coords)} coordinates, field degree is {K.degree}")
    return K(coords)


def parse_system_lines(lines) -> SatakeSystem:
    records = []
    for i, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise InputError(f"line {i}: malformed JSON ({exc})") from exc
    if not records:
        raise InputError("empty system file")
    head = records[0]
    try:
        n, N = int(head["n"]), int(head["N"])
        K = NumberField.from_poly(head["field"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"header needs n, N and field: {exc}") from exc
    S = SatakeSystem(n, N, K)
    for rec in records[1:]:
        try:
            p = int(rec["p"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"record without prime: {rec}") from exc
        if "alpha" in rec:
            S.add_satake(p, [_parse_element(K, x) for x in rec["alpha"]])
        elif "a" in rec:
            S.add_coefficients(p, [_parse_element(K, x) for x in rec["a"]])
        else:
            raise InputError(f"record at p = {p} has neither 'a' nor 'alpha'")
    return S


def load_system(path) -> SatakeSystem:
    return parse_system_lines(Path(path).read_text().splitlines())


def dump_system(system: SatakeSystem) -> str:
    out = [json.dumps({"n": system.n, "N": system.N, "field": list(system.K.defining_poly)})]
    for p in system.primes:
        if p in system.alphas:
            rec = {"p": p, "alpha": [x.to_json() for x in system.alphas[p]]}
        else:
            rec = {"p": p, "a": [x.to_json() for x in system.coeffs[p]]}
        out.append(json.dumps(rec))
    return "\n".join(out) + "\n"
