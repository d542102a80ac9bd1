"""Abstract finite groups given by a Cayley table.

Used for quotients, normal-subgroup search and simplicity tests, where the
matrix representation is no longer available.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from ..errors import EnumerationOverflow, InputError


class TableGroup:
    def __init__(self, table):
        table = np.asarray(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise InputError("Cayley table must be square")
        self.table = table
        n = table.shape[0]
        ident = [i for i in range(n) if np.array_equal(table[i], np.arange(n))]
        if len(ident) != 1:
            raise InputError("table has no unique identity")
        self.identity = ident[0]

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self):
        return self.order

    @cached_property
    def inverse(self) -> np.ndarray:
        rows, cols = np.nonzero(self.table == self.identity)
        inv = np.empty(self.order, dtype=np.int64)
        inv[rows] = cols
        return inv

    def mul(self, a, b):
        return self.table[a, b]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def generated_by(self, gens) -> np.ndarray:
        gens = np.unique(np.asarray(list(gens), dtype=np.int64))
        H = np.union1d([self.identity], gens)
        if len(gens) == 0:
            return H
        while True:
            nxt = np.union1d(H, self.table[np.ix_(H, gens)].ravel())
            if len(nxt) == len(H):
                return H
            H = nxt

    @cached_property
    def conjugacy_classes(self) -> list[np.ndarray]:
        label = np.full(self.order, -1)
        out = []
        inv = self.inverse
        for x in range(self.order):
            if label[x] >= 0:
                continue
            conj = np.unique(self.table[self.table[np.arange(self.order), x], inv])
            label[conj] = len(out)
            out.append(conj)
        return out

    def set_product(self, A, B) -> np.ndarray:
        return np.unique(self.table[np.ix_(np.asarray(A), np.asarray(B))].ravel())

    @cached_property
    def normal_subgroups(self) -> list[np.ndarray]:
        """All normal subgroups, sorted by (order, elements).

        Every normal subgroup is a join of normal closures of conjugacy
        classes, and the join of two normal subgroups is their set product.
        """
        closures = {}
        for c in self.conjugacy_classes:
            N = self.generated_by(c)
            closures[tuple(N.tolist())] = N
        found = {(self.identity,): np.array([self.identity])}
        frontier = list(found.values())
        atoms = list(closures.values())
        while frontier:
            nxt = []
            for N in frontier:
                for C in atoms:
                    J = self.set_product(N, C)
                    key = tuple(J.tolist())
                    if key not in found:
                        found[key] = J
                        nxt.append(J)
            frontier = nxt
        return sorted(found.values(), key=lambda N: (len(N), N.tolist()))

    def is_normal(self, H) -> bool:
        H = np.unique(np.asarray(H))
        inv = self.inverse
        g = np.arange(self.order)
        conj = self.table[self.table[g[:, None], H[None, :]], inv[g][:, None]]
        return bool(np.all(np.isin(conj, H)))

    def is_simple(self) -> bool:
        if self.order == 1:
            return False
        for c in self.conjugacy_classes:
            if self.identity in c:
                continue
            if len(self.generated_by(c)) != self.order:
                return False
        return True

    def minimal_normal_subgroups(self) -> list[np.ndarray]:
        nontriv = [N for N in self.normal_subgroups if len(N) > 1]
        out = []
        for N in nontriv:
            if not any(len(M) < len(N) and np.all(np.isin(M, N)) for M in nontriv):
                out.append(N)
        return out

    def subgroup(self, H) -> "TableGroup":
        """The subgroup on the index set H, relabelled 0..|H|-1 in sorted order."""
        H = np.unique(np.asarray(H))
        pos = np.full(self.order, -1)
        pos[H] = np.arange(len(H))
        sub = pos[self.table[np.ix_(H, H)]]
        if np.any(sub < 0):
            raise InputError("index set is not closed under multiplication")
        return TableGroup(sub)

    def quotient(self, N) -> tuple["TableGroup", np.ndarray]:
        """G/N and the coset label of every element."""
        N = np.unique(np.asarray(N))
        if not self.is_normal(N):
            raise InputError("quotient by a non-normal subgroup")
        label = np.full(self.order, -1)
        reps = []
        for g in range(self.order):
            if label[g] >= 0:
                continue
            label[self.table[g, N]] = len(reps)
            reps.append(g)
        reps = np.array(reps)
        qt = label[self.table[np.ix_(reps, reps)]]
        return TableGroup(qt), label

    def commutator_subgroup(self) -> np.ndarray:
        inv = self.inverse
        a = np.arange(self.order)
        # [a, b] = a b a^-1 b^-1
        ab = self.table[a[:, None], a[None, :]]
        comm = self.table[self.table[ab, inv[a][:, None]], inv[a][None, :]]
        return self.generated_by(np.unique(comm))

    def is_solvable(self) -> bool:
        cur = self
        while cur.order > 1:
            D = cur.commutator_subgroup()
            if len(D) == cur.order:
                return False
            cur = cur.subgroup(D)
        return True

    def simple_direct_factors(self) -> list[np.ndarray] | None:
        """Decompose as a direct product of nonabelian simple groups.

        Returns the factors (as index sets) or None when no such
        decomposition exists.  The trivial group is the empty product.
        """
        if self.order == 1:
            return []
        if self.is_simple():
            return None if self.is_abelian() else [np.arange(self.order)]
        mins = self.minimal_normal_subgroups()
        prod = np.array([self.identity])
        size = 1
        for M in mins:
            sub = self.subgroup(M)
            if sub.is_abelian() or not sub.is_simple():
                return None
            prod = self.set_product(prod, M)
            size *= len(M)
        if size != self.order or len(prod) != self.order:
            return None
        return mins


def table_group(G, cap: int = 2000) -> TableGroup:
    """Cayley table of an enumerated matrix group (elements in G's order)."""
    if G.order > cap:
        raise EnumerationOverflow(f"Cayley table for order {G.order} exceeds cap {cap}")
    return TableGroup(G.cayley_table(cap=cap))
