"""Finite subgroups of GL_n(F_q) given by generators, enumerated by closure."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from pathlib import Path

import numpy as np

from ..arith import fq_linalg as la
from ..arith.finite_field import GF, FqPoly, field as gf
from ..errors import EnumerationOverflow, InputError, InvalidGeneratorError

DEFAULT_CAP = 200_000


class _KeyCodec:
    """Injective encoding of n x n matrices over F_q as sortable keys.

    Row-major entries are read as base-q digits, most significant first, so
    key order is lexicographic order on the matrix entries.
    """

    def __init__(self, q: int, n: int):
        self.q, self.n = q, n
        self.fits = q ** (n * n) < 2**63
        if self.fits:
            self.weights = np.array([q ** (n * n - 1 - i) for i in range(n * n)], dtype=np.int64)

    def encode(self, mats: np.ndarray) -> np.ndarray:
        flat = mats.reshape(mats.shape[:-2] + (self.n * self.n,)).astype(np.int64)
        if self.fits:
            return flat @ self.weights
        out = np.empty(flat.shape[:-1], dtype=object)
        q = self.q
        for idx in np.ndindex(*flat.shape[:-1]):
            v = 0
            for x in flat[idx]:
                v = v * q + int(x)
            out[idx] = v
        return out


class FiniteMatrixGroup:
    """A finite group G <= GL_n(F_q) with its full, lexicographically sorted element list."""

    def __init__(self, F: GF, n: int, generators, elements: np.ndarray, codec: _KeyCodec, keys: np.ndarray):
        self.F = F
        self.n = n
        self.generators = tuple(np.asarray(g, dtype=np.int64).reshape(n, n) for g in generators)
        self.elements = elements
        self._codec = codec
        self._keys = keys
        self.elements.setflags(write=False)

    # -- basic data -------------------------------------------------------------
    @property
    def q(self) -> int:
        return self.F.q

    @property
    def p(self) -> int:
        return self.F.p

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteMatrixGroup(n={self.n}, q={self.q}, order={self.order})"

    @cached_property
    def identity_index(self) -> int:
        return int(self.index_of(np.eye(self.n, dtype=np.int64)))

    def index_of(self, mats) -> np.ndarray | int:
        """Indices of the given matrices; -1 for non-members."""
        mats = np.asarray(mats, dtype=np.int64)
        keys = self._codec.encode(mats)
        if self._codec.fits:
            pos = np.searchsorted(self._keys, keys)
            pos = np.clip(pos, 0, len(self._keys) - 1)
            found = self._keys[pos] == keys
            res = np.where(found, pos, -1)
        else:
            lookup = self._key_dict
            flat = np.asarray(keys).reshape(-1)
            res = np.array([lookup.get(k, -1) for k in flat], dtype=np.int64).reshape(np.shape(keys))
        if np.ndim(res) == 0:
            return int(res)
        return res

    @cached_property
    def _key_dict(self):
        return {k: i for i, k in enumerate(self._keys)}

    def contains(self, mat) -> bool:
        return self.index_of(mat) >= 0

    def __contains__(self, mat) -> bool:
        return self.contains(mat)

    def mul_index(self, i, j):
        return self.index_of(self.F.matmul(self.elements[i], self.elements[j]))

    @cached_property
    def inverse_index(self) -> np.ndarray:
        inv = np.full(self.order, -1, dtype=np.int64)
        e = self.identity_index
        # g^-1 = g^(ord-1); walk powers in bulk
        cur = self.elements.copy()
        idx = np.arange(self.order)
        pending = np.ones(self.order, dtype=bool)
        prev = np.repeat(np.eye(self.n, dtype=np.int64)[None], self.order, axis=0)
        while pending.any():
            nxt_idx = self.index_of(cur)
            done = pending & (nxt_idx == e)
            inv[done] = self.index_of(prev[done])
            pending &= ~done
            prev = cur
            cur = self.F.matmul(cur, self.elements[idx])
        return inv

    @cached_property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(int(self.index_of(g)) for g in self.generators)

    def cayley_table(self, cap: int = 6000) -> np.ndarray:
        """table[i, j] = index of elements[i] @ elements[j]."""
        if self.order > cap:
            raise EnumerationOverflow(f"Cayley table for order {self.order} exceeds cap {cap}")
        return self._cayley

    @cached_property
    def _cayley(self) -> np.ndarray:
        rows = []
        for i in range(self.order):
            rows.append(self.index_of(self.F.matmul(self.elements[i][None], self.elements)))
        return np.stack(rows).astype(np.int64)

    @cached_property
    def charpolys(self) -> np.ndarray:
        """Row i holds the coefficients (low-to-high) of det(1 - g_i T)."""
        out = []
        step = 20000
        for s in range(0, self.order, step):
            out.append(la.batch_reversed_charpoly(self.F, self.elements[s : s + step]))
        return np.concatenate(out, axis=0)

    def charpoly_of(self, mat) -> tuple[int, ...]:
        arr = np.asarray(mat, dtype=np.int64)[None]
        return tuple(int(x) for x in la.batch_reversed_charpoly(self.F, arr)[0])

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        ident = np.eye(self.n, dtype=np.int64)
        cur = self.elements.copy()
        k = 1
        pending = np.ones(self.order, dtype=bool)
        while pending.any():
            is_id = np.all(cur == ident, axis=(1, 2))
            hit = pending & is_id
            orders[hit] = k
            pending &= ~hit
            cur = self.F.matmul(cur, self.elements)
            k += 1
        return orders

    def element_order(self, mat) -> int:
        ident = np.eye(self.n, dtype=np.int64)
        cur = np.asarray(mat, dtype=np.int64)
        k = 1
        while not np.array_equal(cur, ident):
            cur = self.F.matmul(cur, np.asarray(mat, dtype=np.int64))
            k += 1
            if k > self.order:
                raise InputError("matrix is not in the group")
        return k

    # -- subgroups and classes -----------------------------------------------------
    def subgroup(self, generators, cap: int | None = None) -> "FiniteMatrixGroup":
        gens = [np.asarray(g, dtype=np.int64).reshape(self.n, self.n) % self.q for g in generators]
        for g in gens:
            if not self.contains(g):
                raise InputError("subgroup generator is not in the group")
        return close_group(gens, self.q, cap=cap or self.order, n=self.n)

    def subgroup_from_indices(self, idx) -> "FiniteMatrixGroup":
        """Wrap a set of element indices already known to form a subgroup."""
        idx = np.unique(np.asarray(idx, dtype=np.int64))
        elems = self.elements[idx].copy()
        keys = self._keys[idx] if self._codec.fits else np.array([self._keys[i] for i in idx], dtype=object)
        gens = _small_generating_set(self, idx)
        return FiniteMatrixGroup(self.F, self.n, [self.elements[i] for i in gens], elems, self._codec, keys)

    def is_subgroup_of(self, other: "FiniteMatrixGroup") -> bool:
        if other.n != self.n or other.q != self.q:
            return False
        return bool(np.all(other.index_of(self.elements) >= 0))

    def member_indices_in(self, other: "FiniteMatrixGroup") -> np.ndarray:
        return other.index_of(self.elements)

    def is_normal_in(self, other: "FiniteMatrixGroup") -> bool:
        """Conjugation by the generators of ``other`` preserves this subgroup."""
        for g in other.generators:
            ginv = la.inverse(self.F, g.tolist())
            conj = self.F.matmul(self.F.matmul(g[None], np.stack(self.generators)), np.asarray(ginv)[None])
            if np.any(self.index_of(conj) < 0):
                return False
        return True

    def conjugacy_classes(self) -> list[np.ndarray]:
        """Classes as sorted index arrays, ordered by their smallest index."""
        label = np.full(self.order, -1, dtype=np.int64)
        gens = np.stack(self.generators)
        gens_inv = np.stack([np.asarray(la.inverse(self.F, g.tolist())) for g in self.generators])
        classes = []
        for start in range(self.order):
            if label[start] >= 0:
                continue
            cid = len(classes)
            label[start] = cid
            frontier = np.array([start])
            members = [start]
            while len(frontier):
                X = self.elements[frontier]
                conj = self.F.matmul(self.F.matmul(gens[None], X[:, None]), gens_inv[None])
                idx = np.unique(self.index_of(conj.reshape(-1, self.n, self.n)))
                new = idx[label[idx] < 0]
                label[new] = cid
                members.extend(new.tolist())
                frontier = new
            classes.append(np.array(sorted(members), dtype=np.int64))
        return classes

    def centralizer_indices(self, mat) -> np.ndarray:
        A = np.asarray(mat, dtype=np.int64)
        left = self.F.matmul(self.elements, A[None])
        right = self.F.matmul(A[None], self.elements)
        return np.nonzero(np.all(left == right, axis=(1, 2)))[0]

    # -- IO -----------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "generators": [g.reshape(-1).tolist() for g in self.generators],
        }


def _small_generating_set(G: FiniteMatrixGroup, idx: np.ndarray) -> list[int]:
    """Greedy generating set for the subgroup on ``idx`` (deterministic)."""
    target = len(idx)
    gens: list[int] = []
    current = {G.identity_index}
    for i in idx.tolist():
        if len(current) == target:
            break
        if i in current:
            continue
        gens.append(i)
        current = _closure_indices(G, gens)
    return gens or [G.identity_index]


def _closure_indices(G: FiniteMatrixGroup, gens: list[int]) -> set[int]:
    seen = {G.identity_index}
    frontier = np.array([G.identity_index])
    gmats = G.elements[gens]
    while len(frontier):
        prods = G.F.matmul(G.elements[frontier][:, None], gmats[None])
        idx = np.unique(G.index_of(prods.reshape(-1, G.n, G.n)))
        new = [i for i in idx.tolist() if i not in seen]
        seen.update(new)
        frontier = np.array(new, dtype=np.int64)
    return seen


def close_group(generators, q: int, cap: int = DEFAULT_CAP, n: int | None = None) -> FiniteMatrixGroup:
    """Breadth-first closure of the generators inside GL_n(F_q)."""
    F = gf(q)
    gens = [np.asarray(g, dtype=np.int64) for g in generators]
    if not gens:
        if n is None:
            raise InputError("need at least one generator or an explicit n")
        gens = [np.eye(n, dtype=np.int64)]
    if n is None:
        side = int(round(np.sqrt(gens[0].size)))
        n = side
    gens = [g.reshape(n, n) for g in gens]
    for g in gens:
        if np.any(g < 0) or np.any(g >= q):
            raise InputError("generator entries must be element codes in [0, q)")
        if la.det(F, g.tolist()) == 0:
            raise InvalidGeneratorError(f"singular generator {g.tolist()}")
    codec = _KeyCodec(q, n)
    gen_arr = np.stack(gens)
    ident = np.eye(n, dtype=np.int64)
    all_mats = [ident[None]]
    seen = {int(k) if codec.fits else k for k in np.atleast_1d(codec.encode(ident[None]))}
    frontier = ident[None]
    total = 1
    while len(frontier):
        prods = F.matmul(frontier[:, None], gen_arr[None]).reshape(-1, n, n)
        keys = codec.encode(prods)
        if codec.fits:
            uniq, first = np.unique(keys, return_index=True)
            mask = np.array([int(k) not in seen for k in uniq], dtype=bool)
            new_keys = uniq[mask]
            new = prods[first[mask]]
            seen.update(int(k) for k in new_keys)
        else:
            chosen = {}
            for i, k in enumerate(keys):
                if k not in seen and k not in chosen:
                    chosen[k] = i
            seen.update(chosen)
            new = prods[list(chosen.values())] if chosen else prods[:0]
        total += len(new)
        if total > cap:
            raise EnumerationOverflow(f"group closure exceeded cap {cap}")
        if len(new):
            all_mats.append(new)
        frontier = new
    elems = np.concatenate(all_mats, axis=0)
    keys = codec.encode(elems)
    if codec.fits:
        order = np.argsort(keys, kind="stable")
    else:
        order = np.array(sorted(range(len(keys)), key=lambda i: keys[i]), dtype=np.int64)
    elems = elems[order]
    keys = keys[order]
    return FiniteMatrixGroup(F, n, gens, elems, codec, keys)


# -- characteristic polynomial statistics -------------------------------------------


@dataclass(frozen=True)
class CharPolyHistogram:
    """Counts of det(1 - gT) over G; keys are coefficient-code tuples, low-to-high."""

    q: int
    n: int
    counts: dict
    classes: dict  # key -> index array into the group's element list

    @property
    def M(self) -> int:
        return max(self.counts.values())

    def count(self, key) -> int:
        return self.counts.get(tuple(key), 0)

    def ranked(self) -> list[tuple]:
        """Keys by decreasing count, ties broken lexicographically."""
        return sorted(self.counts, key=lambda k: (-self.counts[k], k))

    def as_fqpoly(self, key) -> FqPoly:
        return FqPoly(gf(self.q), key)

    def to_json(self) -> list:
        return [{"coeffs": list(k), "count": self.counts[k]} for k in sorted(self.counts)]


def charpoly_histogram(G: FiniteMatrixGroup) -> CharPolyHistogram:
    cps = G.charpolys
    uniq, inverse, counts = np.unique(cps, axis=0, return_inverse=True, return_counts=True)
    inverse = inverse.reshape(-1)
    keys = [tuple(int(x) for x in row) for row in uniq]
    order = np.argsort(inverse, kind="stable")
    bounds = np.cumsum(counts)[:-1]
    groups = np.split(order, bounds)
    return CharPolyHistogram(
        G.q,
        G.n,
        {k: int(c) for k, c in zip(keys, counts)},
        {k: np.sort(g) for k, g in zip(keys, groups)},
    )


def M_of(G: FiniteMatrixGroup, mat) -> int:
    """M_G(g): the number of elements sharing g's characteristic polynomial."""
    key = G.charpoly_of(mat)
    return charpoly_histogram(G).count(key)


# -- IO -----------------------------------------------------------------------------


def parse_group_json(obj: dict, cap: int = DEFAULT_CAP) -> FiniteMatrixGroup:
    try:
        n = int(obj["n"])
        q = int(obj["q"])
        raw = obj["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"group file needs integer n, q and a generators list: {exc}") from exc
    F = gf(q)
    gens = []
    for g in raw:
        arr = np.asarray(g, dtype=np.int64).reshape(-1)
        if arr.size != n * n:
            raise InputError(f"generator has {arr.size} entries, expected {n * n}")
        if F.k == 1:
            arr = arr % q
        gens.append(arr.reshape(n, n))
    return close_group(gens, q, cap=cap, n=n)


def load_group(path, cap: int = DEFAULT_CAP) -> FiniteMatrixGroup:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from exc
    return parse_group_json(obj, cap=cap)


def block_diagonal(blocks) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=np.int64)
    o = 0
    for b in blocks:
        k = b.shape[0]
        out[o : o + k, o : o + k] = b
        o += k
    return out


def is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
