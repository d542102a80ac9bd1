"""The property C(eta, N) and its inheritance by subgroups of bounded index."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import InputError, PreconditionError
from .group import FiniteMatrixGroup, charpoly_histogram


@dataclass(frozen=True)
class CPropertyResult:
    holds: bool
    eta: Fraction
    N: int
    witness: np.ndarray  # sorted element indices of H
    keys: tuple  # characteristic polynomials used by H
    group_order: int

    @property
    def size(self) -> int:
        return len(self.witness)

    def to_json(self):
        return {
            "holds": self.holds,
            "eta": str(self.eta),
            "N": self.N,
            "H_size": self.size,
            "group_order": self.group_order,
            "keys": [list(k) for k in self.keys],
        }


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def check_C_property(G: FiniteMatrixGroup, eta, N: int) -> CPropertyResult:
    """Decide C(eta, N) with the optimal witness: the N largest histogram classes.

    Any H with at most N distinct characteristic polynomials sits inside the
    union of their classes, so taking the N largest classes maximizes |H|.
    """
    eta = _as_fraction(eta)
    if not (0 < eta < 1):
        raise InputError("eta must lie in (0, 1)")
    if N < 1:
        raise InputError("N must be positive")
    hist = charpoly_histogram(G)
    top = hist.ranked()[:N]
    if top:
        witness = np.sort(np.concatenate([hist.classes[k] for k in top]))
    else:  # pragma: no cover
        witness = np.zeros(0, dtype=np.int64)
    holds = (1 - eta) * G.order <= len(witness)
    return CPropertyResult(bool(holds), eta, N, witness, tuple(top), G.order)


@dataclass(frozen=True)
class InheritanceReport:
    premise: bool  # G satisfies C(eta, N)
    conclusion: bool  # G' satisfies C(d eta, N)
    index: int
    d: int
    intersected_size: int  # |H cap G'|
    intersected_bound: Fraction  # (1 - d eta) |G'|

    @property
    def implication(self) -> bool:
        return (not self.premise) or self.conclusion

    def to_json(self):
        return {
            "premise": self.premise,
            "conclusion": self.conclusion,
            "implication": self.implication,
            "index": self.index,
            "d": self.d,
            "intersected_size": self.intersected_size,
            "intersected_bound": str(self.intersected_bound),
        }


def inheritance_report(G: FiniteMatrixGroup, Gp: FiniteMatrixGroup, eta, N: int, d: int) -> InheritanceReport:
    eta = _as_fraction(eta)
    if not Gp.is_subgroup_of(G):
        raise InputError("G' is not a subgroup of G")
    index = G.order // Gp.order
    # [G:G'] <= d rather than < d; the intersection argument only needs <=
    if index > d:
        raise PreconditionError(f"[G:G'] = {index} exceeds d = {d}")
    if not eta * d < 1:
        raise PreconditionError("need eta < 1/d")
    big = check_C_property(G, eta, N)
    small = check_C_property(Gp, d * eta, N)
    # intersected witness H cap G'
    sub_idx = Gp.member_indices_in(G)
    inter = int(np.isin(big.witness, sub_idx).sum())
    bound = (1 - d * eta) * Gp.order
    if big.holds and inter < bound:  # pragma: no cover - would contradict the counting argument
        from ..errors import InternalConsistencyError

        raise InternalConsistencyError("intersected witness is too small")
    return InheritanceReport(big.holds, small.holds, index, d, inter, bound)


def check_inheritance(G: FiniteMatrixGroup, Gp: FiniteMatrixGroup, eta, N: int, d: int | None = None) -> bool:
    """True iff C(eta, N) for G implies C(d eta, N) for G' on this instance."""
    if d is None:
        if not Gp.is_subgroup_of(G):
            raise InputError("G' is not a subgroup of G")
        d = G.order // Gp.order
    return inheritance_report(G, Gp, eta, N, d).implication
