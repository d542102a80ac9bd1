"""Finite fields F_q (q = p^k <= 2^12) with table arithmetic, elements and polynomials.

An element of F_q is encoded as the integer ``sum(c_i * p**i)`` where ``c`` is its
coordinate vector on the power basis ``1, x, ..., x^(k-1)`` modulo a fixed monic
irreducible polynomial.  The modulus is the first primitive polynomial in
lexicographic order of its (reversed) coefficient list, so ``x`` generates the
multiplicative group.  The prime subfield occupies codes ``0..p-1``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product, zip_longest

import numpy as np

from ..errors import InputError

MAX_TABLE_Q = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, or raise."""
    if q < 2:
        raise InputError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise InputError(f"{q} is not a prime power")
    return p, k


def factorint(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _poly_mulmod_p(a, b, mod, p):
    k = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for j in range(k + 1):
                prod[d - k + j] = (prod[d - k + j] - c * mod[j]) % p
    return (prod + [0] * k)[:k]


def _find_modulus(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)
    order = p**k - 1
    prime_divs = list(factorint(order))
    # reversed lexicographic: constant term varies fastest
    for tail in product(range(p), repeat=k):
        mod = tuple(reversed(tail)) + (1,)
        if mod[0] == 0:
            continue
        # x must have multiplicative order exactly p^k - 1
        def xpow(e):
            result, base = [1] + [0] * (k - 1), [0, 1] + [0] * (k - 2)
            while e:
                if e & 1:
                    result = _poly_mulmod_p(result, base, mod, p)
                base = _poly_mulmod_p(base, base, mod, p)
                e >>= 1
            return result
        one = [1] + [0] * (k - 1)
        if xpow(order) != one:
            continue
        if all(xpow(order // r) != one for r in prime_divs):
            return mod
    raise AssertionError("no primitive polynomial found")  # pragma: no cover


class GF:
    """The finite field with q elements.  Use :func:`field` to get cached instances."""

    def __init__(self, q: int):
        p, k = prime_power(q)
        if q > MAX_TABLE_Q:
            raise InputError(f"table arithmetic limited to q <= {MAX_TABLE_Q}")
        self.p, self.k, self.q = p, k, q
        self.modulus = _find_modulus(p, k)
        self._build_tables()

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        coords = np.array([[(c // p**i) % p for i in range(k)] for c in range(q)], dtype=np.int64)
        weights = p ** np.arange(k, dtype=np.int64)
        self.ADD = ((coords[:, None, :] + coords[None, :, :]) % p) @ weights
        self.NEG = ((-coords) % p) @ weights
        self.SUB = self.ADD[:, self.NEG]
        # multiplication via discrete log of the primitive element x
        exp = np.zeros(q - 1, dtype=np.int64)
        cur = [1] + [0] * (k - 1)
        xs = [0, 1] + [0] * (k - 2) if k > 1 else None
        if k == 1:
            g = _primitive_root(p)
        for e in range(q - 1):
            if k == 1:
                exp[e] = pow(g, e, p)
            else:
                exp[e] = sum(c * p**i for i, c in enumerate(cur))
                cur = _poly_mulmod_p(cur, xs, self.modulus, p)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self.EXP, self.LOG = exp, log
        idx = (log[:, None] + log[None, :]) % (q - 1)
        mul = exp[idx]
        mul[0, :] = 0
        mul[:, 0] = 0
        self.MUL = mul
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(-log[1:]) % (q - 1)]
        self.INV = inv
        self.generator = int(exp[1]) if q > 2 else 1
        # python-list copies for fast scalar work
        self._add = self.ADD.tolist()
        self._mul = self.MUL.tolist()
        self._neg = self.NEG.tolist()
        self._inv = self.INV.tolist()
        self._sub = self.SUB.tolist()

    # -- scalar arithmetic on codes ------------------------------------------
    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._sub[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return int(self.EXP[(int(self.LOG[a]) * e) % (self.q - 1)])

    def from_int(self, n: int) -> int:
        return n % self.p

    def frobenius(self, a: int, times: int = 1) -> int:
        return self.pow(a, self.p**times)

    def coords(self, a: int) -> tuple[int, ...]:
        return tuple((a // self.p**i) % self.p for i in range(self.k))

    def from_coords(self, c) -> int:
        return sum((int(x) % self.p) * self.p**i for i, x in enumerate(c))

    def element_order(self, a: int) -> int:
        from math import gcd
        return (self.q - 1) // gcd(int(self.LOG[a]), self.q - 1)

    def sum(self, values) -> int:
        acc = 0
        for v in values:
            acc = self._add[acc][v]
        return acc

    # -- array arithmetic ----------------------------------------------------
    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Batched matrix product with numpy broadcasting over leading axes."""
        if self.k == 1:
            return (A.astype(np.int64) @ B.astype(np.int64)) % self.p
        prods = self.MUL[A[..., :, :, None], B[..., None, :, :]]
        acc = prods[..., 0, :]
        for j in range(1, prods.shape[-2]):
            acc = self.ADD[acc, prods[..., j, :]]
        return acc

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return (field, (self.q,))


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    divs = list(factorint(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in divs):
            return g
    raise AssertionError  # pragma: no cover


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


def embedding(small: GF, big: GF) -> list[int]:
    """A field embedding F_small -> F_big as a lookup list on codes.

    Found by brute-force search for a root of the small field's modulus.
    """
    if small.p != big.p or big.k % small.k:
        raise InputError(f"{small} does not embed in {big}")
    if small.k == 1:
        return list(range(small.q))
    mod = small.modulus
    for beta in range(big.q):
        acc = 0
        for c in reversed(mod):
            acc = big.add(big.mul(acc, beta), c)
        if acc == 0:
            images = []
            for a in range(small.q):
                val = 0
                for c in reversed(small.coords(a)):
                    val = big.add(big.mul(val, beta), c)
                images.append(val)
            return images
    raise AssertionError  # pragma: no cover


class FqElement:
    """Immutable element of F_q (thin wrapper around a code)."""

    __slots__ = ("F", "code")

    def __init__(self, F: GF, code: int):
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "code", int(code))

    def __setattr__(self, *a):
        raise AttributeError("FqElement is immutable")

    @property
    def p(self):
        return self.F.p

    @property
    def degree(self):
        return self.F.k

    @property
    def coords(self):
        return self.F.coords(self.code)

    def _lift(self, other):
        if isinstance(other, FqElement):
            if other.F is not self.F:
                raise InputError("mixed fields")
            return other.code
        return self.F.from_int(int(other))

    def __add__(self, o):
        return FqElement(self.F, self.F.add(self.code, self._lift(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return FqElement(self.F, self.F.sub(self.code, self._lift(o)))

    def __rsub__(self, o):
        return FqElement(self.F, self.F.sub(self._lift(o), self.code))

    def __mul__(self, o):
        return FqElement(self.F, self.F.mul(self.code, self._lift(o)))

    __rmul__ = __mul__

    def __neg__(self):
        return FqElement(self.F, self.F.neg(self.code))

    def __truediv__(self, o):
        return FqElement(self.F, self.F.div(self.code, self._lift(o)))

    def __pow__(self, e: int):
        if e < 0:
            return FqElement(self.F, self.F.pow(self.F.inv(self.code), -e))
        return FqElement(self.F, self.F.pow(self.code, e))

    def __eq__(self, o):
        if isinstance(o, FqElement):
            return self.F is o.F and self.code == o.code
        if isinstance(o, int):
            return self.code == self.F.from_int(o)
        return NotImplemented

    def __hash__(self):
        return hash((self.F.q, self.code))

    def __int__(self):
        if self.F.k != 1:
            raise TypeError("only prime-field elements convert to int")
        return self.code

    def __repr__(self):
        if self.F.k == 1:
            return f"{self.code} mod {self.F.p}"
        return f"F{self.F.q}{self.coords}"


class FqPoly:
    """Polynomial over F_q, coefficient codes stored low-to-high."""

    __slots__ = ("F", "coeffs")

    def __init__(self, F: GF, coeffs):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.F = F
        self.coeffs = tuple(c)

    @classmethod
    def from_ints(cls, F: GF, ints):
        return cls(F, [F.from_int(x) for x in ints])

    @classmethod
    def x(cls, F: GF):
        return cls(F, (0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1]

    def __eq__(self, o):
        return isinstance(o, FqPoly) and o.F is self.F and o.coeffs == self.coeffs

    def __hash__(self):
        return hash((self.F.q, self.coeffs))

    def __repr__(self):
        return f"FqPoly(q={self.F.q}, {list(self.coeffs)})"

    def __add__(self, o):
        F = self.F
        return FqPoly(F, [F.add(a, b) for a, b in zip_longest(self.coeffs, o.coeffs, fillvalue=0)])

    def __sub__(self, o):
        F = self.F
        return FqPoly(F, [F.sub(a, b) for a, b in zip_longest(self.coeffs, o.coeffs, fillvalue=0)])

    def __neg__(self):
        return FqPoly(self.F, [self.F.neg(a) for a in self.coeffs])

    def __mul__(self, o):
        F = self.F
        if isinstance(o, int):
            o = FqPoly(F, [F.from_int(o)])
        if not self.coeffs or not o.coeffs:
            return FqPoly(F, ())
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return FqPoly(F, out)

    def scale(self, c: int):
        return FqPoly(self.F, [self.F.mul(a, c) for a in self.coeffs])

    def __divmod__(self, g):
        F = self.F
        if g.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dg = g.degree
        inv_lead = F.inv(g.lead())
        if len(r) - 1 < dg:
            return FqPoly(F, ()), FqPoly(F, r)
        q = [0] * (len(r) - dg)
        for k in range(len(r) - 1 - dg, -1, -1):
            c = F.mul(r[k + dg], inv_lead)
            q[k] = c
            if c:
                for j, b in enumerate(g.coeffs):
                    r[k + j] = F.sub(r[k + j], F.mul(c, b))
        return FqPoly(F, q), FqPoly(F, r[:dg])

    def __mod__(self, g):
        return divmod(self, g)[1]

    def __floordiv__(self, g):
        return divmod(self, g)[0]

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.F.inv(self.lead()))

    def gcd(self, o):
        a, b = self, o
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self):
        F = self.F
        return FqPoly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs) if i])

    def powmod(self, e: int, m):
        result = FqPoly(self.F, (1,))
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            base = (base * base) % m
            e >>= 1
        return result

    def __call__(self, x: int) -> int:
        F = self.F
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def roots(self) -> list[int]:
        return [a for a in range(self.F.q) if self(a) == 0]

    def is_squarefree(self) -> bool:
        d = self.derivative()
        if d.is_zero():
            return self.degree <= 0
        return self.gcd(d).degree == 0

    def splits_into_distinct_linear(self) -> bool:
        """gcd(x^q - x, f) = f together with squarefreeness."""
        if self.degree <= 0:
            return True
        f = self.monic()
        xq = FqPoly.x(self.F).powmod(self.F.q, f)
        return (xq - FqPoly.x(self.F)) % f == FqPoly(self.F, ()) and f.is_squarefree()

    def map_coeffs(self, fn):
        return FqPoly(self.F, [fn(c) for c in self.coeffs])
