"""Module-theoretic tools for G acting on V = F_q^n: spinning, semisimplicity,
centralizer fields and Clifford decompositions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

import numpy as np

from ..arith import fq_linalg as la
from ..arith.finite_field import GF, FqPoly, embedding, field as gf
from ..errors import InputError, InternalConsistencyError, NotIrreducibleError
from .group import FiniteMatrixGroup, close_group


class Echelon:
    """Incrementally maintained reduced row echelon basis of a subspace."""

    def __init__(self, F: GF, n: int):
        self.F, self.n = F, n
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def reduce(self, v) -> list[int]:
        F = self.F
        w = [int(x) for x in v]
        for row, pc in zip(self.rows, self.pivots):
            c = w[pc]
            if c:
                w = [F.sub(a, F.mul(c, b)) for a, b in zip(w, row)]
        return w

    def add(self, v) -> bool:
        w = self.reduce(v)
        pc = next((i for i, x in enumerate(w) if x), None)
        if pc is None:
            return False
        F = self.F
        inv = F.inv(w[pc])
        w = [F.mul(x, inv) for x in w]
        # keep rows fully reduced
        for i, row in enumerate(self.rows):
            c = row[pc]
            if c:
                self.rows[i] = [F.sub(a, F.mul(c, b)) for a, b in zip(row, w)]
        self.rows.append(w)
        self.pivots.append(pc)
        order = sorted(range(len(self.pivots)), key=self.pivots.__getitem__)
        self.rows = [self.rows[i] for i in order]
        self.pivots = [self.pivots[i] for i in order]
        return True

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def key(self) -> tuple:
        return tuple(tuple(r) for r in self.rows)


def _apply(F: GF, g: np.ndarray, v) -> list[int]:
    return F.matmul(g, np.asarray(v, dtype=np.int64)[:, None])[:, 0].tolist()


def spin(F: GF, gens, vectors, n: int) -> Echelon:
    """Smallest subspace containing ``vectors`` and stable under ``gens``."""
    E = Echelon(F, n)
    queue = []
    for v in vectors:
        if E.add(v):
            queue.append(list(v))
    while queue:
        v = queue.pop()
        for g in gens:
            w = _apply(F, g, v)
            if E.add(w):
                queue.append(w)
    return E


def projective_points(F: GF, n: int):
    """Nonzero vectors with first nonzero coordinate 1, in lexicographic order."""
    for lead in range(n):
        for tail in product(range(F.q), repeat=n - lead - 1):
            yield [0] * lead + [1] + list(tail)


def _points_in(q: int, d: int) -> int:
    return (q**d - 1) // (q - 1)


def simple_submodules(F: GF, gens, n: int) -> list[tuple]:
    """All simple submodules of F_q^n, as canonical echelon keys.

    A spun subspace S is simple iff every point of S spins to S, which is
    detected by counting points per spun subspace.
    """
    counts: dict[tuple, int] = {}
    for v in projective_points(F, n):
        key = spin(F, gens, [v], n).key()
        counts[key] = counts.get(key, 0) + 1
    simples = [k for k, c in counts.items() if c == _points_in(F.q, len(k))]
    return sorted(simples, key=lambda k: (len(k), k))


@dataclass(frozen=True)
class SemisimplicityResult:
    semisimple: bool
    summands: tuple  # echelon bases (tuples of row tuples) of the irreducible summands
    maschke: bool  # |G| prime to p, so semisimplicity was known in advance
    socle_dim: int

    def to_json(self):
        return {
            "semisimple": self.semisimple,
            "maschke": self.maschke,
            "socle_dim": self.socle_dim,
            "summand_dims": [len(s) for s in self.summands],
            "summands": [[list(r) for r in s] for s in self.summands],
        }


def decompose(F: GF, gens, n: int) -> tuple[bool, tuple, int]:
    """Greedy direct sum of simple submodules.

    If S is simple and not inside the running sum U then S cap U = 0, so the
    greedy sum is direct and ends at the socle; V is semisimple iff the socle is V.
    """
    acc = Echelon(F, n)
    chosen = []
    for key in simple_submodules(F, gens, n):
        trial = Echelon(F, n)
        trial.rows, trial.pivots = [list(r) for r in acc.rows], list(acc.pivots)
        if all(trial.add(r) for r in key):
            acc = trial
            chosen.append(key)
        if acc.dim == n:
            break
    return acc.dim == n, tuple(chosen), acc.dim


def is_semisimple(G: FiniteMatrixGroup) -> SemisimplicityResult:
    if G.n > 6:
        raise InputError("semisimplicity test supports n <= 6")
    maschke = gcd(G.order, G.p) == 1
    ok, summands, socle = decompose(G.F, G.generators, G.n)
    if maschke and not ok:  # pragma: no cover
        raise InternalConsistencyError("Maschke's theorem violated")
    return SemisimplicityResult(ok, summands, maschke, socle)


def invariant_subspaces(F: GF, gens, n: int) -> list[tuple]:
    """Every G-invariant subspace (sums of cyclic submodules), n small."""
    cyclic = set()
    for v in projective_points(F, n):
        cyclic.add(spin(F, gens, [v], n).key())
    found = {(): ()}
    frontier = [()]
    while frontier:
        nxt = []
        for U in frontier:
            for C in cyclic:
                S = spin(F, gens, [list(r) for r in U] + [list(r) for r in C], n).key()
                if S not in found:
                    found[S] = S
                    nxt.append(S)
        frontier = nxt
    return sorted(found, key=lambda k: (len(k), k))


def is_irreducible(G: FiniteMatrixGroup) -> bool:
    for v in projective_points(G.F, G.n):
        if spin(G.F, G.generators, [v], G.n).dim < G.n:
            return False
    return True


# -- commutants and centralizers ------------------------------------------------


def intertwiners(F: GF, pairs) -> list[np.ndarray]:
    """Basis of {X : X A = B X for all (A, B) in pairs}, X of shape (b, a)."""
    A0, B0 = pairs[0]
    a, b = A0.shape[0], B0.shape[0]
    rows = []
    for A, B in pairs:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        for i in range(b):
            for j in range(a):
                row = [0] * (a * b)
                for c in range(a):
                    row[i * a + c] = F.add(row[i * a + c], int(A[c, j]))
                for r in range(b):
                    row[r * a + j] = F.sub(row[r * a + j], int(B[i, r]))
                rows.append(row)
    return [np.asarray(v, dtype=np.int64).reshape(b, a) for v in la.nullspace(F, rows)]


def centralizer_basis(G: FiniteMatrixGroup) -> list[np.ndarray]:
    return intertwiners(G.F, [(g, g) for g in G.generators])


def _min_poly(F: GF, X: np.ndarray) -> list[int]:
    """Monic minimal polynomial of a square matrix, low-to-high codes."""
    n = X.shape[0]
    powers = [np.eye(n, dtype=np.int64)]
    E = Echelon(F, n * n)
    while True:
        cur = powers[-1]
        if E.contains(cur.reshape(-1).tolist()):
            # solve cur = sum c_i powers[i]
            A = np.stack([P.reshape(-1) for P in powers[:-1]], axis=1).tolist()
            c = la.solve(F, A, cur.reshape(-1).tolist())
            return [F.neg(x) for x in c] + [1]
        E.add(cur.reshape(-1).tolist())
        powers.append(F.matmul(cur, X))


def is_irreducible_poly(f: FqPoly) -> bool:
    d = f.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    F = f.F
    f = f.monic()
    x = FqPoly.x(F)
    xp = x
    for _ in range(d // 2):
        xp = xp.powmod(F.q, f)
        if (xp - x).gcd(f).degree > 0:
            return False
    return True


@dataclass
class WedderburnData:
    r: int
    m: int
    centralizer_basis: list
    primitive: np.ndarray  # X with Z = F_q[X]
    min_poly: tuple  # minimal polynomial of X over F_q (codes, low-to-high)
    theta: int  # image of X in F_{q^r}
    vector_basis: np.ndarray  # n x n, columns X^j v_i ordered (i, j)
    image: FiniteMatrixGroup  # G' in GL_m(F_{q^r})
    element_images: np.ndarray  # g' for every g in G (same order as G.elements)
    identity_checked: int  # number of elements where f_g = prod f_{g'}^sigma was verified

    def to_json(self):
        return {
            "r": self.r,
            "m": self.m,
            "min_poly": list(self.min_poly),
            "theta": self.theta,
            "image_order": self.image.order,
            "image_field": self.image.q,
            "image_generators": [g.reshape(-1).tolist() for g in self.image.generators],
            "identity_checked": self.identity_checked,
            "centralizer_basis": [Z.reshape(-1).tolist() for Z in self.centralizer_basis],
        }


def _frob_array(F: GF, a: np.ndarray, e: int) -> np.ndarray:
    """a -> a^(p^e) elementwise."""
    if F.q == 2:
        return a
    expo = (F.LOG[a] * pow(F.p, e, F.q - 1)) % (F.q - 1)
    return np.where(a == 0, 0, F.EXP[expo])


def _poly_mul_batch(F: GF, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros(a.shape[:-1] + (a.shape[-1] + b.shape[-1] - 1,), dtype=np.int64)
    for i in range(a.shape[-1]):
        for j in range(b.shape[-1]):
            out[..., i + j] = F.ADD[out[..., i + j], F.MUL[a[..., i], b[..., j]]]
    return out


def _find_primitive(F: GF, basis, r: int):
    """An element X of the centralizer algebra with minimal polynomial of degree r."""
    n = basis[0].shape[0]
    for coeffs in product(range(F.q), repeat=len(basis)):
        if not any(coeffs):
            continue
        X = np.zeros((n, n), dtype=np.int64)
        for c, Z in zip(coeffs, basis):
            if c:
                X = F.ADD[X, F.MUL[c, Z]]
        mp = _min_poly(F, X)
        if len(mp) - 1 == r:
            return X, mp
    raise InternalConsistencyError("centralizer algebra has no primitive element; not a field")


def wedderburn_rewrite(G: FiniteMatrixGroup) -> WedderburnData:
    """Rewrite an irreducible G <= GL_n(F_q) as an absolutely irreducible
    G' <= GL_m(F_{q^r}), where F_{q^r} is the centralizer field."""
    F = G.F
    n = G.n
    if not is_irreducible(G):
        raise NotIrreducibleError("G does not act irreducibly")
    basis = centralizer_basis(G)
    r = len(basis)
    if n % r:
        raise InternalConsistencyError(f"centralizer dimension {r} does not divide n = {n}")
    for A in basis:
        for B in basis:
            if not np.array_equal(F.matmul(A, B), F.matmul(B, A)):
                raise InternalConsistencyError("centralizer is not commutative")
    X, mp = _find_primitive(F, basis, r)
    if not is_irreducible_poly(FqPoly(F, mp)):
        raise InternalConsistencyError("centralizer is not a field")
    m = n // r
    big = gf(F.q**r)
    emb = np.asarray(embedding(F, big), dtype=np.int64)
    mp_big = FqPoly(big, [int(emb[c]) for c in mp])
    theta = min(mp_big.roots())
    # F_{q^r}-basis v_1..v_m of V: X^j v_i (j < r) form an F_q-basis
    E = Echelon(F, n)
    cols = []
    Xp = [np.eye(n, dtype=np.int64)]
    for _ in range(1, r):
        Xp.append(F.matmul(Xp[-1], X))
    for k in range(n):
        if E.dim == n:
            break
        e = [1 if t == k else 0 for t in range(n)]
        if E.contains(e):
            continue
        for P in Xp:
            w = P[:, k].tolist()
            if not E.add(w):  # pragma: no cover
                raise InternalConsistencyError("X-span of a vector is not r-dimensional")
            cols.append(w)
    B = np.asarray(cols, dtype=np.int64).T
    Binv = np.asarray(la.inverse(F, B.tolist()), dtype=np.int64)
    lead_cols = [i * r for i in range(m)]
    # coordinates of g v_i in the basis B, for every element at once
    coords = F.matmul(F.matmul(Binv[None], G.elements), B[:, lead_cols][None])  # (|G|, n, m)
    coords = coords.reshape(G.order, m, r, m)  # [g, i', j, i]
    theta_pow = np.array([big.pow(theta, j) for j in range(r)], dtype=np.int64)
    images = np.zeros((G.order, m, m), dtype=np.int64)
    for j in range(r):
        images = big.ADD[images, big.MUL[emb[coords[:, :, j, :]], theta_pow[j]]]
    # f_g = prod over sigma of f_{g'}^sigma
    fprime = la.batch_reversed_charpoly(big, images)
    prod_poly = fprime
    for s in range(1, r):
        prod_poly = _poly_mul_batch(big, prod_poly, _frob_array(big, fprime, F.k * s))
    expected = emb[G.charpolys]
    if not np.array_equal(prod_poly, expected):
        raise InternalConsistencyError("characteristic polynomial identity failed")
    gen_idx = G.generator_indices
    Gp = close_group([images[i] for i in gen_idx], big.q, cap=max(G.order, 1), n=m)
    if Gp.order != G.order:
        raise InternalConsistencyError("rewritten group has a different order")
    if not is_absolutely_irreducible(Gp):
        raise InternalConsistencyError("rewritten group is not absolutely irreducible")
    return WedderburnData(r, m, basis, X, tuple(mp), theta, B, Gp, images, G.order)


def is_absolutely_irreducible(G: FiniteMatrixGroup) -> bool:
    """Irreducible with scalar centralizer."""
    return is_irreducible(G) and len(centralizer_basis(G)) == 1


# -- Clifford ------------------------------------------------------------------


def _restricted_action(F: GF, g: np.ndarray, basis_rows) -> np.ndarray:
    """Matrix of g on the invariant subspace spanned by basis_rows (in that basis)."""
    Bt = np.asarray(basis_rows, dtype=np.int64).T  # n x k
    k = Bt.shape[1]
    img = F.matmul(g, Bt)
    out = np.zeros((k, k), dtype=np.int64)
    for j in range(k):
        c = la.solve(F, Bt.tolist(), img[:, j].tolist())
        if c is None:
            raise InternalConsistencyError("subspace is not invariant")
        out[:, j] = c
    return out


@dataclass(frozen=True)
class CliffordResult:
    components: tuple  # echelon bases of the K-isotypic components
    irreducible_dims: tuple
    multiplicities: tuple
    permutations: tuple  # for each generator of G, the induced permutation of components

    def to_json(self):
        return {
            "components": [[list(r) for r in c] for c in self.components],
            "irreducible_dims": list(self.irreducible_dims),
            "multiplicities": list(self.multiplicities),
            "permutations": [list(p) for p in self.permutations],
        }


def clifford_decompose(G: FiniteMatrixGroup, K: FiniteMatrixGroup) -> CliffordResult:
    if not K.is_subgroup_of(G) or not K.is_normal_in(G):
        raise InputError("K must be a normal subgroup of G")
    F, n = G.F, G.n
    if not is_semisimple(G).semisimple:
        raise InputError("V is not semisimple as a G-module")
    ok, summands, _ = decompose(F, K.generators, n)
    if not ok:  # pragma: no cover - Clifford's theorem
        raise InternalConsistencyError("restriction to a normal subgroup is not semisimple")
    actions = [[_restricted_action(F, k, s) for k in K.generators] for s in summands]
    # group summands by isomorphism type
    labels = list(range(len(summands)))
    for i in range(len(summands)):
        for j in range(i):
            if labels[j] != j or len(summands[i]) != len(summands[j]):
                continue
            if intertwiners(F, list(zip(actions[j], actions[i]))):
                labels[i] = j
                break
    types = sorted(set(labels))
    comps, dims, mults = [], [], []
    for t in types:
        rows = [list(r) for s, lab in zip(summands, labels) if lab == t for r in s]
        E = Echelon(F, n)
        for v in rows:
            E.add(v)
        comps.append(E.key())
        dims.append(len(summands[t]))
        mults.append(sum(1 for lab in labels if lab == t))
    perms = []
    index = {c: i for i, c in enumerate(comps)}
    for g in G.generators:
        perm = []
        for c in comps:
            E = Echelon(F, n)
            for v in c:
                E.add(_apply(F, g, v))
            j = index.get(E.key())
            if j is None:
                raise InternalConsistencyError("G does not permute the isotypic components")
            perm.append(j)
        perms.append(tuple(perm))
    return CliffordResult(tuple(comps), tuple(dims), tuple(mults), tuple(perms))
