"""Lifting a finite subgroup of GL_n(F_ell) of order prime to ell to GL_n(Z/ell^k).

Start from the entrywise lift phi of each element, which is a homomorphism mod
ell.  If phi is a homomorphism mod ell^j, the average

    psi(g) = (1/|G|) sum_h phi(gh) phi(h)^-1

is a homomorphism mod ell^(j+1) reducing to phi: the defect of phi is a
2-cocycle with values in M_n(F_ell), and averaging over G (|G| invertible)
writes it as a coboundary.  Each step is checked on the full multiplication
table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd

import numpy as np

from ..arith.finite_field import _primitive_root
from ..errors import InputError, InternalConsistencyError, PreconditionError
from ..langlands_params.params import reversed_charpoly
from ..matgroup.group import FiniteMatrixGroup
from .cyclo import roots_of_unity


def _matmul_mod(A, B, m):
    return np.mod(np.matmul(A, B), m)


def _inverse_mod(mats, inv0, m, ell):
    """Newton iteration X <- X (2 - A X) from inverses mod ell."""
    n = mats.shape[-1]
    two = 2 * np.eye(n, dtype=mats.dtype)
    X = inv0.copy()
    prec = ell
    while prec < m:
        X = _matmul_mod(X, np.mod(two - _matmul_mod(mats, X, m), m), m)
        prec *= prec
    return X


def _valuation(x: int, ell: int, cap: int) -> int:
    if x == 0:
        return cap
    v = 0
    while x % ell == 0 and v < cap:
        x //= ell
        v += 1
    return v


@dataclass
class LiftResult:
    ell: int
    k: int
    images: np.ndarray  # (|G|, n, n) integer matrices mod ell^k, indexed like G.elements
    generator_images: list
    transcript: list = field(default_factory=list)  # (step, defect valuation) pairs
    generator_charpolys: list = field(default_factory=list)  # det(1 - phi(g) T) mod ell^k
    generator_matches: list = field(default_factory=list)  # root multisets from Y(A), or None

    @property
    def modulus(self) -> int:
        return self.ell**self.k

    def to_json(self):
        return {
            "ell": self.ell,
            "k": self.k,
            "modulus": self.modulus,
            "generator_images": [np.asarray(g).tolist() for g in self.generator_images],
            "transcript": [{"step": s, "defect_valuation": v} for s, v in self.transcript],
            "generator_charpolys": [list(map(int, c)) for c in self.generator_charpolys],
            "generator_matches": [None if m is None else [str(r) for r in m] for m in self.generator_matches],
        }


def _defect_valuation(images, table, m, ell, k) -> int:
    prod = _matmul_mod(images[:, None], images[None, :], m)
    diff = np.mod(prod - images[table], m)
    nz = diff[diff != 0]
    if nz.size == 0:
        return k
    return min(_valuation(int(x), ell, k) for x in np.unique(nz))


def schur_zassenhaus_lift(G: FiniteMatrixGroup, k: int, A: int | None = None, max_steps: int | None = None) -> LiftResult:
    ell = G.q
    if G.F.k != 1:
        raise InputError("lifting needs a matrix group over a prime field")
    if k < 1:
        raise InputError("k must be positive")
    order = G.order
    if gcd(order, ell) != 1:
        raise PreconditionError(f"ell = {ell} divides |G| = {order}")
    m = ell**k
    n = G.n
    dtype = np.int64 if n * m * m < 2**62 else object
    table = G.cayley_table()
    inv_idx = np.asarray(G.inverse_index)
    images = np.asarray(G.elements, dtype=np.int64).astype(dtype)
    base_inv = images[inv_idx].copy()
    inv_order = pow(order, -1, m)
    transcript = [(0, _defect_valuation(images, table, m, ell, k))]
    step = 0
    max_steps = max_steps or 2 * k + 2
    while transcript[-1][1] < k:
        step += 1
        if step > max_steps:
            raise InternalConsistencyError("lift did not converge")
        inv = _inverse_mod(images, base_inv, m, ell)
        new = np.zeros_like(images)
        for g in range(order):
            acc = _matmul_mod(images[table[g]], inv, m).sum(axis=0)
            new[g] = np.mod(acc * inv_order, m)
        images = new
        transcript.append((step, _defect_valuation(images, table, m, ell, k)))
    if np.any(np.mod(images, ell) != np.asarray(G.elements)):
        raise InternalConsistencyError("lift does not reduce to the input group")
    gens = [images[i] for i in G.generator_indices]
    res = LiftResult(ell, k, images, gens, transcript)
    for g in gens:
        cp = charpoly_mod(g, m)
        res.generator_charpolys.append(cp)
        res.generator_matches.append(match_teichmuller(cp, ell, k, A) if A else None)
    return res


def charpoly_mod(M, m: int) -> tuple[int, ...]:
    """det(1 - M T) mod m for an integer matrix, via exact rational arithmetic."""
    rows = [[Fraction(int(x)) for x in r] for r in np.asarray(M).tolist()]
    cp = reversed_charpoly(rows, Fraction(1), Fraction(0))
    return tuple(int(c) % m for c in cp)


def teichmuller_root(ell: int, k: int) -> int:
    """A generator of the (ell-1)-th roots of unity in Z/ell^k."""
    g = _primitive_root(ell)
    return pow(g, ell ** (k - 1), ell**k)


def match_teichmuller(cp, ell: int, k: int, A: int):
    """Root multiset in Y(A) whose Teichmuller image mod ell^k has reversed charpoly cp."""
    m = ell**k
    w = teichmuller_root(ell, k)
    roots = [r for r in roots_of_unity(A) if (ell - 1) % r.denominator == 0]
    vals = {r: pow(w, (ell - 1) * r.numerator // r.denominator, m) for r in roots}
    n = len(cp) - 1
    for combo in combinations_with_replacement(roots, n):
        poly = [1]
        for r in combo:
            z = vals[r]
            poly = [(a - z * b) % m for a, b in zip(poly + [0], [0] + poly)]
        if tuple(poly) == tuple(cp):
            return combo
    return None


def verify_lift(G: FiniteMatrixGroup, res: LiftResult) -> bool:
    table = G.cayley_table()
    m = res.modulus
    prod = _matmul_mod(res.images[:, None], res.images[None, :], m)
    return bool(np.all(prod == res.images[table])) and bool(np.all(np.mod(res.images, res.ell) == G.elements))
