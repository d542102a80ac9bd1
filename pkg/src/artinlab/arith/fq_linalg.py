"""Dense linear algebra over F_q on nested lists of element codes."""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .finite_field import GF


def rref(F: GF, rows) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    M = [list(map(int, r)) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(x, inv) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(F: GF, rows) -> int:
    return len(rref(F, rows)[0])


def span_key(F: GF, rows) -> tuple:
    """Canonical hashable key of the row space."""
    R, _ = rref(F, rows)
    return tuple(tuple(r) for r in R)


def nullspace(F: GF, M) -> list[list[int]]:
    """Basis of {x : M x = 0} (column vectors returned as lists)."""
    if not M:
        return []
    ncols = len(M[0])
    R, piv = rref(F, M)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(R, piv):
            v[pc] = F.neg(row[f])
        basis.append(v)
    return basis


def matmul(F: GF, A, B):
    n, m, p = len(A), len(B), len(B[0])
    return [[F.sum(F.mul(A[i][k], B[k][j]) for k in range(m)) for j in range(p)] for i in range(n)]


def matvec(F: GF, A, v):
    return [F.sum(F.mul(a, x) for a, x in zip(row, v)) for row in A]


def identity(n: int):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def inverse(F: GF, A):
    n = len(A)
    aug = [list(A[i]) + identity(n)[i] for i in range(n)]
    R, piv = rref(F, aug)
    if piv[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def det(F: GF, A) -> int:
    n = len(A)
    M = [list(r) for r in A]
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = F.neg(d)
        d = F.mul(d, M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c]:
                f = F.mul(M[i][c], inv)
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[c])]
    return d


def solve(F: GF, A, b):
    """One solution x of A x = b, or None if inconsistent."""
    n = len(A[0])
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, piv = rref(F, aug)
    if n in piv:
        return None
    x = [0] * n
    for row, pc in zip(R, piv):
        x[pc] = row[n]
    return x


# -- batched characteristic polynomials ---------------------------------------

_PERM_CACHE: dict[int, list[tuple[tuple[int, ...], int]]] = {}


def _signed_perms(k: int):
    if k not in _PERM_CACHE:
        out = []
        for perm in permutations(range(k)):
            inv = sum(1 for i in range(k) for j in range(i + 1, k) if perm[i] > perm[j])
            out.append((perm, -1 if inv % 2 else 1))
        _PERM_CACHE[k] = out
    return _PERM_CACHE[k]


def batch_det(F: GF, M: np.ndarray) -> np.ndarray:
    """Determinants of a stack of k x k matrices (Leibniz; k <= 6)."""
    k = M.shape[-1]
    batch = M.shape[:-2]
    if k == 0:
        return np.ones(batch, dtype=np.int64)
    if F.k == 1:
        p = F.p
        acc = np.zeros(batch, dtype=np.int64)
        for perm, sign in _signed_perms(k):
            term = M[..., 0, perm[0]].astype(np.int64)
            for i in range(1, k):
                term = (term * M[..., i, perm[i]]) % p
            acc = (acc + sign * term) % p
        return acc
    acc = np.zeros(batch, dtype=np.int64)
    for perm, sign in _signed_perms(k):
        term = M[..., 0, perm[0]].astype(np.int64)
        for i in range(1, k):
            term = F.MUL[term, M[..., i, perm[i]]]
        acc = F.ADD[acc, term] if sign > 0 else F.SUB[acc, term]
    return acc


def batch_reversed_charpoly(F: GF, M: np.ndarray) -> np.ndarray:
    """Coefficients of det(1 - gT) for a stack of n x n matrices.

    Returns an array of shape (..., n+1) with entry k equal to
    (-1)^k times the sum of principal k x k minors.
    """
    from itertools import combinations

    n = M.shape[-1]
    batch = M.shape[:-2]
    out = np.zeros(batch + (n + 1,), dtype=np.int64)
    out[..., 0] = 1
    for k in range(1, n + 1):
        acc = np.zeros(batch, dtype=np.int64)
        for S in combinations(range(n), k):
            idx = list(S)
            sub = M[..., idx, :][..., :, idx]
            d = batch_det(F, sub)
            acc = F.ADD[acc, d]
        out[..., k] = F.NEG[acc] if k % 2 else acc
    return out
