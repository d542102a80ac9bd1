"""Number fields of small degree and exact algebraic numbers on the power basis."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd as igcd

from ..errors import BadReductionError, InputError, InvalidPlaceError
from . import qpoly as qp
from .finite_field import FqElement, FqPoly, field as gf, is_prime

MAX_CHECKED_DEGREE = 8


def _lcm(a: int, b: int) -> int:
    return a * b // igcd(a, b)


def _squarefree_part(d: int) -> int:
    sign = -1 if d < 0 else 1
    d = abs(d)
    out = 1
    f = 2
    while f * f <= d:
        e = 0
        while d % f == 0:
            d //= f
            e += 1
        if e % 2:
            out *= f
        f += 1
    return sign * out * d


@dataclass(frozen=True, eq=False)
class NumberField:
    """Q[x]/(f) for a monic irreducible integer polynomial f (low-to-high)."""

    defining_poly: tuple[int, ...]
    label: str = ""
    kind: str = dc_field(default="generic", compare=False)
    param: int = dc_field(default=0, compare=False)

    def __post_init__(self):
        f = tuple(int(c) for c in self.defining_poly)
        object.__setattr__(self, "defining_poly", f)
        if len(f) < 2 or f[-1] != 1:
            raise InputError(f"defining polynomial {f} must be monic of degree >= 1")
        if self.degree <= MAX_CHECKED_DEGREE and not _is_irreducible(f):
            raise InputError(f"defining polynomial {f} is not irreducible over Q")
        if not self.label:
            object.__setattr__(self, "label", f"Q[x]/({_poly_str(f)})")

    # catalog --------------------------------------------------------------
    @classmethod
    def rationals(cls) -> "NumberField":
        return _rationals()

    @classmethod
    def quadratic(cls, d: int) -> "NumberField":
        return _quadratic(d)

    @classmethod
    def cyclotomic(cls, m: int) -> "NumberField":
        return _cyclotomic(m)

    @classmethod
    def from_poly(cls, coeffs, label: str = "") -> "NumberField":
        """Build a field, recognizing catalog members by their defining polynomial."""
        f = tuple(int(c) for c in coeffs)
        if f == (-1, 1):
            return _rationals()
        if len(f) == 3 and f[1] == 0 and f[2] == 1 and _squarefree_part(-f[0]) == -f[0]:
            return _quadratic(-f[0])
        for m in range(3, 61):
            if qp.cyclotomic_poly(m) == f and m % 4 != 2:
                return _cyclotomic(m)
        return cls(f, label)

    # basic data -----------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.defining_poly) - 1

    @cached_property
    def _qpoly(self):
        return qp.qpoly(self.defining_poly)

    def __eq__(self, other):
        return isinstance(other, NumberField) and other.defining_poly == self.defining_poly

    def __hash__(self):
        return hash(self.defining_poly)

    def __repr__(self):
        return f"NumberField({self.label})"

    # elements -------------------------------------------------------------
    def __call__(self, coords) -> "AlgebraicNumber":
        if isinstance(coords, (int, Fraction)):
            coords = [coords]
        c = [Fraction(x) for x in coords]
        if len(c) > self.degree:
            return AlgebraicNumber(self, tuple(c))._reduced()
        return AlgebraicNumber(self, tuple(c + [Fraction(0)] * (self.degree - len(c))))

    def zero(self):
        return self([0])

    def one(self):
        return self([1])

    def gen(self):
        """The class of x (for Q with f = x - 1 this is 1)."""
        if self.degree == 1:
            return self([-self.defining_poly[0]])
        return self([0, 1])

    def from_poly_in_gen(self, coeffs) -> "AlgebraicNumber":
        return AlgebraicNumber(self, tuple(Fraction(c) for c in coeffs))._reduced()

    @cached_property
    def conjugation(self):
        """Image of the generator under complex conjugation, when known."""
        if self.kind in ("rational",):
            return self.gen()
        if self.kind == "quadratic":
            return self.gen() if self.param > 0 else -self.gen()
        if self.kind == "cyclotomic":
            return self.gen() ** (self.param - 1)
        return None

    def is_root(self, a: "AlgebraicNumber") -> bool:
        acc = self.zero()
        for c in reversed(self.defining_poly):
            acc = acc * a + c
        return acc.is_zero()

    # splitting ------------------------------------------------------------
    def reduction_poly(self, ell: int) -> FqPoly:
        return FqPoly.from_ints(gf(ell), self.defining_poly)

    def splits_completely(self, ell: int) -> bool:
        return splits_completely(self, ell)

    def simple_roots_mod(self, ell: int) -> list[int]:
        f = self.reduction_poly(ell)
        df = f.derivative()
        return [r for r in f.roots() if df(r) != 0]

    # cyclotomic embedding -------------------------------------------------
    @cached_property
    def conductor_embedding(self):
        """(m, coords) with the generator written in Q(zeta_m), or None.

        ``coords`` are rational coordinates on the power basis of Q(zeta_m).
        """
        if self.kind == "rational":
            return 1, (Fraction(1),)
        if self.kind == "cyclotomic":
            m = self.param
            C = NumberField.cyclotomic(m)
            return m, C.gen().coords
        if self.kind == "quadratic":
            d = self.param
            D = d if d % 4 == 1 else 4 * d
            m = abs(D)
            C = NumberField.cyclotomic(m) if m % 4 != 2 else NumberField.cyclotomic(m // 2)
            if m % 4 == 2:  # never happens for fundamental discriminants
                raise AssertionError
            z = C.gen()
            s = C.zero()
            for a in range(1, m):
                if igcd(a, m) == 1:
                    chi = kronecker(D, a)
                    if chi:
                        s = s + z**a * chi
            if D != d:
                s = s / 2
            if s * s != C([d]):
                s = None
            if s is None:
                raise AssertionError("Gauss sum failed")  # pragma: no cover
            return m, s.coords
        return None


def _poly_str(f) -> str:
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if mon and c == 1:
            terms.append(mon)
        elif mon and c == -1:
            terms.append("-" + mon)
        else:
            terms.append(f"{c}{'*' if mon else ''}{mon}")
    return " + ".join(terms).replace("+ -", "- ")


def _is_irreducible(f) -> bool:
    if len(f) == 2:
        return True
    import sympy

    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed(f)), x, domain="QQ").is_irreducible


@lru_cache(maxsize=None)
def _rationals():
    return NumberField((-1, 1), "Q", "rational", 1)


@lru_cache(maxsize=None)
def _quadratic(d: int):
    if d in (0, 1) or _squarefree_part(d) != d:
        raise InputError(f"quadratic field needs a squarefree d != 0, 1; got {d}")
    return NumberField((-d, 0, 1), f"Q(sqrt({d}))", "quadratic", d)


@lru_cache(maxsize=None)
def _cyclotomic(m: int):
    if m < 1:
        raise InputError("cyclotomic level must be positive")
    if m % 4 == 2:
        m //= 2
    if m <= 2:
        return _rationals()
    f = qp.cyclotomic_poly(m)
    nf = NumberField.__new__(NumberField)
    object.__setattr__(nf, "defining_poly", f)
    object.__setattr__(nf, "label", f"Q(zeta_{m})")
    object.__setattr__(nf, "kind", "cyclotomic")
    object.__setattr__(nf, "param", m)
    return nf


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D / n) for n >= 1."""
    if n == 1:
        return 1
    result = 1
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        result *= 1 if D % 8 in (1, 7) else -1
    if n == 1:
        return result
    # Jacobi symbol (D mod n / n)
    a = D % n
    j = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                j = -j
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            j = -j
        a %= n
    return result * j if n == 1 else 0


@dataclass(frozen=True, eq=False)
class AlgebraicNumber:
    field: NumberField
    coords: tuple[Fraction, ...]

    def _reduced(self) -> "AlgebraicNumber":
        r = qp.mod(qp.qpoly(self.coords), self.field._qpoly)
        d = self.field.degree
        return AlgebraicNumber(self.field, tuple(r) + (Fraction(0),) * (d - len(r)))

    def _coerce(self, other) -> "AlgebraicNumber":
        if isinstance(other, AlgebraicNumber):
            if other.field != self.field:
                raise InputError("arithmetic across different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field([other])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return AlgebraicNumber(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return AlgebraicNumber(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber(self.field, tuple(a * other for a in self.coords))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.field.degree == 1:
            return AlgebraicNumber(self.field, (self.coords[0] * o.coords[0],))
        prod = qp.mul(qp.qpoly(self.coords), qp.qpoly(o.coords))
        return AlgebraicNumber(self.field, prod)._reduced()

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero algebraic number")
        if self.field.degree == 1:
            return AlgebraicNumber(self.field, (1 / self.coords[0],))
        d, s, _ = qp.xgcd(qp.qpoly(self.coords), self.field._qpoly)
        if d != (Fraction(1),):
            raise ZeroDivisionError("element is not invertible")  # pragma: no cover
        return AlgebraicNumber(self.field, s)._reduced()

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber(self.field, tuple(a / other for a in self.coords))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, AlgebraicNumber):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash(self.coords)

    def __repr__(self):
        if self.is_rational():
            return f"{self.coords[0]}"
        return f"AlgebraicNumber({self.field.label}, {[str(c) for c in self.coords]})"

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def denominator(self) -> int:
        den = 1
        for c in self.coords:
            den = _lcm(den, c.denominator)
        return den

    def is_integral_on_basis(self) -> bool:
        return self.denominator() == 1

    def apply_automorphism(self, image: "AlgebraicNumber") -> "AlgebraicNumber":
        """sigma(self) where sigma sends the generator to ``image``."""
        if self.field.degree == 1:
            return self
        acc = self.field.zero()
        for c in reversed(self.coords):
            acc = acc * image + c
        return acc

    def conjugate(self) -> "AlgebraicNumber":
        img = self.field.conjugation
        if img is None:
            raise InputError(f"complex conjugation unknown for {self.field}")
        return self.apply_automorphism(img)

    def to_json(self):
        return [str(c) for c in self.coords]


# -- reduction at a split place ------------------------------------------------


def reduce_mod_place(a: AlgebraicNumber, ell: int, root: int) -> FqElement:
    """Image of ``a`` in F_ell under the place sending the generator to ``root``."""
    K = a.field
    F = gf(ell)
    if not is_prime(ell):
        raise InputError(f"{ell} is not prime")
    f = K.reduction_poly(ell)
    r = root % ell
    if f(r) != 0:
        raise InvalidPlaceError(f"{root} is not a root of {K.label} mod {ell}")
    if f.derivative()(r) == 0:
        raise InvalidPlaceError(f"{root} is a multiple root of {K.label} mod {ell}")
    if a.denominator() % ell == 0:
        raise BadReductionError(f"{ell} divides a denominator of {a}")
    if K.degree == 1:
        c = a.coords[0]
        return FqElement(F, c.numerator * pow(c.denominator, -1, ell) % ell)
    acc = 0
    for c in reversed(a.coords):
        acc = (acc * r + c.numerator * pow(c.denominator, -1, ell)) % ell
    return FqElement(F, acc)


def splits_completely(K: NumberField, ell: int) -> bool:
    """True iff the defining polynomial is a product of distinct linear factors mod ell.

    Primes at which the reduction is not squarefree (equivalently, primes dividing
    the polynomial discriminant) are declared non-split.
    """
    if not is_prime(ell):
        raise InputError(f"{ell} is not prime")
    if K.degree == 1:
        return True
    f = K.reduction_poly(ell)
    if not f.is_squarefree():
        return False
    return f.splits_into_distinct_linear()
