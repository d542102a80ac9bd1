"""Mod-ell Frobenius tables, cross-ell matching against Y and recovery certificates."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..arith.finite_field import is_prime
from ..arith.numfield import NumberField
from ..errors import InconsistentTablesError, InputError, InvalidConjugationDatum, InvalidPlaceError, UnmatchedPrimeError
from ..langlands_params import SignVector
from .cyclo import CycloCharPoly, YSet, reduce_member, reduction_index, restrict_Y


@dataclass
class ModLFrobTable:
    ell: int
    K: NumberField
    root: int
    excluded: frozenset = frozenset()
    entries: dict = field(default_factory=dict)  # p -> (c_0 = 1, c_1, ..., c_n) mod ell

    def __post_init__(self):
        if not is_prime(self.ell):
            raise InputError(f"tables must be over a prime field; {self.ell} is not prime")
        f = self.K.reduction_poly(self.ell)
        r = self.root % self.ell
        if f(r) != 0 or f.derivative()(r) == 0:
            raise InvalidPlaceError(f"{self.root} is not a simple root of {self.K.label} mod {self.ell}")
        self.root = r
        self.excluded = frozenset(int(x) for x in self.excluded)
        entries, self.entries = self.entries, {}
        for p, c in entries.items():
            self.add(p, c)

    @property
    def degree(self) -> int | None:
        for c in self.entries.values():
            return len(c) - 1
        return None

    @property
    def support(self) -> set:
        return set(self.entries)

    def add(self, p: int, coeffs):
        p = int(p)
        if not is_prime(p):
            raise InputError(f"{p} is not prime")
        if p == self.ell:
            raise InputError(f"table at ell = {self.ell} has an entry at p = ell")
        if p in self.excluded:
            raise InputError(f"p = {p} is in the excluded set")
        c = tuple(int(x) % self.ell for x in coeffs)
        if not c or c[0] != 1:
            raise InputError(f"entry at p = {p} must have constant term 1")
        if self.degree is not None and len(c) - 1 != self.degree:
            raise InputError(f"entry at p = {p} has degree {len(c) - 1}, expected {self.degree}")
        self.entries[p] = c

    def to_lines(self) -> str:
        head = {"ell": self.ell, "field": list(self.K.defining_poly), "root": self.root, "excluded": sorted(self.excluded)}
        out = [json.dumps(head)]
        for p in sorted(self.entries):
            out.append(json.dumps({"p": p, "coeffs": list(self.entries[p])}))
        return "\n".join(out) + "\n"

    def dump(self, path):
        Path(path).write_text(self.to_lines())

    @classmethod
    def from_lines(cls, lines) -> "ModLFrobTable":
        recs = []
        for i, line in enumerate(lines, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                recs.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise InputError(f"line {i}: malformed JSON ({exc})") from exc
        if not recs:
            raise InputError("empty table")
        head = recs[0]
        try:
            ell = int(head["ell"])
            K = NumberField.from_poly(head.get("field", [-1, 1]))
            root = int(head.get("root", 0 if K.degree > 1 else 1))
            excluded = head.get("excluded", [])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad table header: {exc}") from exc
        if "q" in head and int(head["q"]) != ell:
            raise InputError("tables over extension fields are not supported")
        if K.degree == 1:
            root = 1 % ell
        t = cls(ell, K, root, frozenset(excluded))
        for rec in recs[1:]:
            try:
                t.add(rec["p"], rec["coeffs"])
            except (KeyError, TypeError) as exc:
                raise InputError(f"bad table record {rec}") from exc
        return t

    @classmethod
    def load(cls, path) -> "ModLFrobTable":
        return cls.from_lines(Path(path).read_text().splitlines())


@dataclass
class RecoveryCertificate:
    A: int
    n: int
    K: NumberField
    tables: list  # (ell, root)
    matches: dict  # p -> CycloCharPoly
    coverage: dict  # p -> list of ell
    injective: dict  # ell -> bool, re-verified at match time
    signature: SignVector | None = None
    lift: dict | None = None

    @property
    def cross_validated(self) -> int:
        return sum(1 for v in self.coverage.values() if len(v) > 1)

    @property
    def bound_consistent(self) -> bool:
        return all(max(m.orders, default=1) < self.A for m in self.matches.values())

    def to_json(self):
        return {
            "A": self.A,
            "n": self.n,
            "field": list(self.K.defining_poly),
            "tables": [{"ell": e, "root": r} for e, r in self.tables],
            "injective": {str(k): v for k, v in self.injective.items()},
            "matched_primes": len(self.matches),
            "cross_validated_primes": self.cross_validated,
            "bound_consistent": self.bound_consistent,
            "matches": {str(p): m.to_json() for p, m in sorted(self.matches.items())},
            "coverage": {str(p): v for p, v in sorted(self.coverage.items())},
            "signature": None if self.signature is None else self.signature.to_json(),
            "lift": self.lift,
        }


def match_frobenius(tables, A: int, Y: YSet | None = None, conjugation=None) -> RecoveryCertificate:
    """Match every tabulated prime to the unique member of Y cap K[T] reducing to it.

    Primes present in several tables must match the same member in each.
    """
    tables = list(tables)
    if not tables:
        raise InputError("need at least one table")
    K = tables[0].K
    n = next((t.degree for t in tables if t.degree is not None), None)
    if n is None:
        raise InputError("tables are empty")
    for t in tables:
        if t.K != K:
            raise InputError("tables use different coefficient fields")
        if t.degree not in (None, n):
            raise InputError("tables have different degrees")
    if Y is None or Y.field != K:
        Y = restrict_Y(A, n, K)
    indices, injective = [], {}
    for t in tables:
        if t.ell <= A:
            raise InputError(f"ell = {t.ell} is not admissible: need ell > A = {A}")
        idx = reduction_index(Y, t.ell, t.root)
        injective[t.ell] = idx is not None
        if idx is None:
            raise InputError(f"ell = {t.ell} is not admissible: Y does not inject mod the place")
        indices.append(idx)
    matches, coverage = {}, {}
    for p in sorted(set().union(*(t.support for t in tables))):
        found = {}
        for t, idx in zip(tables, indices):
            if p in t.entries:
                found[t.ell] = idx.get(t.entries[p])
        hits = {i for i in found.values() if i is not None}
        if not hits:
            raise UnmatchedPrimeError(p, sorted(found)[0] if len(found) == 1 else sorted(found))
        if len(hits) > 1 or None in found.values():
            detail = {ell: (None if i is None else Y.members[i].label()) for ell, i in found.items()}
            raise InconsistentTablesError(p, str(detail))
        matches[p] = Y.members[hits.pop()]
        coverage[p] = sorted(found)
    sig = conjugation_signature(conjugation) if conjugation is not None else None
    return RecoveryCertificate(A, n, K, [(t.ell, t.root) for t in tables], matches, coverage, injective, sig)


def verify_certificate(cert: RecoveryCertificate, tables) -> bool:
    """Every matched R_p reduces to the stored entry at every table."""
    for t in tables:
        for p, c in t.entries.items():
            if p in cert.matches and reduce_member(cert.matches[p], t.ell, t.root) != c:
                return False
    return True


def conjugation_signature(R_c) -> SignVector:
    """Signs of complex conjugation from R_c = (1 - T)^a (1 + T)^b."""
    if isinstance(R_c, CycloCharPoly):
        bad = [r for r in R_c.roots if r.denominator > 2]
        if bad:
            raise InvalidConjugationDatum(f"root of order {bad[0].denominator} in conjugation datum")
        a = sum(1 for r in R_c.roots if r.denominator == 1)
        return SignVector((1,) * a + (-1,) * (R_c.degree - a))
    coeffs = [int(c) for c in R_c]
    if not coeffs or coeffs[0] != 1:
        raise InvalidConjugationDatum("conjugation datum must have constant term 1")
    signs = []
    for x, sign in ((1, 1), (-1, -1)):
        while len(coeffs) > 1 and sum(c * x**k for k, c in enumerate(coeffs)) == 0:
            # divide by (1 - x T)
            q, carry = [], 0
            for c in coeffs[:-1]:
                carry = c + carry * x
                q.append(carry)
            coeffs = q
            signs.append(sign)
    if coeffs != [1]:
        raise InvalidConjugationDatum("conjugation datum has a root of order > 2")
    return SignVector(tuple(signs))
