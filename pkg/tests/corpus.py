"""Shared small groups used across the test modules."""

import numpy as np

from artinlab.arith import field
from artinlab.matgroup import close_group


def restrict_scalars(q_big: int, mats):
    """Write matrices over F_{p^k} as pk x pk matrices over F_p (basis 1, x, ..., x^(k-1))."""
    F = field(q_big)
    p, k = F.p, F.k
    basis = [p**i for i in range(k)]  # codes of 1, x, x^2, ...

    def block(a):
        cols = []
        for b in basis:
            c = F.mul(a, b)
            cols.append([(c // p**i) % p for i in range(k)])
        return np.array(cols, dtype=np.int64).T

    out = []
    for M in mats:
        M = np.asarray(M)
        m = M.shape[0]
        R = np.zeros((m * k, m * k), dtype=np.int64)
        for i in range(m):
            for j in range(m):
                R[i * k:(i + 1) * k, j * k:(j + 1) * k] = block(int(M[i, j]))
        out.append(R)
    return out, p


def irreducible_not_absolutely():
    """Irreducible groups whose centralizer is a proper extension field."""
    groups = {
        "C3<GL2(2)": close_group([[[0, 1], [1, 1]]], 2),
        "C4<GL2(3)": close_group([[[0, 2], [1, 0]]], 3),
        "C8<GL2(3)": close_group([[[0, 1], [1, 1]]], 3),
        "C24<GL2(5)": close_group([[[0, 3], [1, 1]]], 5),
        "C7<GL3(2)": close_group([[[0, 0, 1], [1, 0, 1], [0, 1, 0]]], 2),
        "C5<GL4(2)": close_group([[[0, 0, 0, 1], [1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]]], 2),
    }
    # SL2(4) acting on F_4^2, viewed over F_2
    w = field(4).generator
    gens, p = restrict_scalars(4, [[[1, 1], [0, 1]], [[1, 0], [w, 1]], [[w, 0], [0, field(4).inv(w)]]])
    groups["SL2(4)<GL4(2)"] = close_group(gens, p)
    return groups


def s3(q=5):
    return close_group([[[0, 1], [1, 0]], [[0, q - 1], [1, q - 1]]], q)


def small_corpus():
    """Groups of order at most 24 over small fields."""
    out = {
        "trivial": close_group([], 3, n=2),
        "C2": close_group([[[2, 0], [0, 1]]], 3),
        "C4": close_group([[[0, 2], [1, 0]]], 3),
        "C3<GL2(2)": close_group([[[0, 1], [1, 1]]], 2),
        "S3/F2": close_group([[[0, 1], [1, 0]], [[0, 1], [1, 1]]], 2),
        "S3/F5": s3(5),
        "S3/F7": s3(7),
        "Q8/F3": close_group([[[0, 2], [1, 0]], [[1, 1], [1, 2]]], 3),
        "unipotent/F3": close_group([[[1, 1], [0, 1]]], 3),
        "C6/F7": close_group([[[3, 0], [0, 1]]], 7),
        "D4/F3": close_group([[[0, 1], [1, 0]], [[1, 0], [0, 2]]], 3),
        "SL2(3)": close_group([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], 3),
        "C7<GL3(2)": close_group([[[0, 0, 1], [1, 0, 1], [0, 1, 0]]], 2),
        "A4/F13": close_group([[[0, 0, 1], [1, 0, 0], [0, 1, 0]], [[1, 0, 0], [0, 12, 0], [0, 0, 12]]], 13),
        "C8<GL2(3)": close_group([[[0, 1], [1, 1]]], 3),
    }
    return out
