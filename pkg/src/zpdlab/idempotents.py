"""Idempotents, their spans, and ideals inside the idempotent span."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import Algebra, matrix_units, multiply
from .certificate import Certificate, Outcome
from .errors import NotAnIdealError, NotIdempotentError, UnsupportedAlgebraError
from .linalg import ONE, ZERO, Subspace, Vector, as_vector

__all__ = [
    "IdempotentFamily", "IdealSpec", "is_idempotent", "idempotent_span", "standard_family",
    "check_full_idempotent_span", "validate_ideal",
]


def is_idempotent(A: Algebra, p: Sequence) -> bool:
    p = A.element(p)
    return multiply(A, p, p) == p


@dataclass(frozen=True)
class IdempotentFamily:
    algebra: Algebra
    elements: tuple

    def __post_init__(self):
        elems = tuple(self.algebra.element(p) for p in self.elements)
        object.__setattr__(self, "elements", elems)
        for idx, p in enumerate(elems):
            if not is_idempotent(self.algebra, p):
                raise NotIdempotentError(f"family member {idx} is not idempotent", idx)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def idempotent_span(A: Algebra, fam: IdempotentFamily | Sequence) -> Subspace:
    if not isinstance(fam, IdempotentFamily):
        fam = IdempotentFamily(A, tuple(fam))
    return Subspace.span(fam.elements, A.dim)


def standard_family(A: Algebra) -> IdempotentFamily:
    """``{E_ii} + {E_ii + E_ij : i != j}`` for algebras with a matrix-unit basis."""
    units = matrix_units(A)
    if units is None:
        raise UnsupportedAlgebraError(
            f"no standard idempotent family for {A.name or 'this algebra'}; supply one explicitly"
        )
    _, positions = units
    index = {p: k for k, p in enumerate(positions)}
    elems = []
    for (i, j) in positions:
        if i == j:
            elems.append(_units_vector(A.dim, {index[(i, i)]: ONE}))
    for (i, j) in positions:
        if i != j:
            elems.append(_units_vector(A.dim, {index[(i, i)]: ONE, index[(i, j)]: ONE}))
    return IdempotentFamily(A, tuple(elems))


def _units_vector(n: int, entries: dict) -> Vector:
    v = [ZERO] * n
    for k, x in entries.items():
        v[k] = x
    return tuple(v)


def check_full_idempotent_span(A: Algebra, fam: IdempotentFamily | None = None) -> Certificate:
    """Certified when the family spans ``A``; inconclusive otherwise.

    A family that falls short says nothing about whether other idempotents
    would span, so this never refutes.
    """
    if fam is None:
        fam = standard_family(A)
    span = idempotent_span(A, fam)
    details = {"span_dim": span.dim, "algebra_dim": A.dim, "family_size": len(fam)}
    if span.is_full():
        return Certificate(Outcome.CERTIFIED, witness={"family": fam.elements},
                           generators_used=len(fam), details=details)
    return Certificate(Outcome.INCONCLUSIVE, generators_used=len(fam), details=details)


@dataclass(frozen=True)
class IdealSpec:
    algebra: Algebra
    space: Subspace


def validate_ideal(A: Algebra, J: Subspace | Sequence, fam: IdempotentFamily | None = None) -> IdealSpec:
    """Check ``A J ⊆ J`` and ``J A ⊆ J`` on basis pairs (and ``J ⊆ span(fam)`` if given)."""
    if not isinstance(J, Subspace):
        J = Subspace.span([as_vector(v) for v in J], A.dim)
    if J.ambient_dim != A.dim:
        raise NotAnIdealError(f"ideal lives in dimension {J.ambient_dim}, algebra has {A.dim}", None)
    builder = J.builder()
    for side in ("left", "right"):
        for i in range(A.dim):
            e = A.basis(i)
            for x in J.basis:
                prod = multiply(A, e, x) if side == "left" else multiply(A, x, e)
                if not builder.reduces_to_zero(prod):
                    pair = (A.labels[i], A.describe(x)) if side == "left" else (A.describe(x), A.labels[i])
                    raise NotAnIdealError(f"{pair[0]} * {pair[1]} leaves the subspace", pair)
    if fam is not None:
        span = idempotent_span(A, fam).builder()
        for x in J.basis:
            if not span.reduces_to_zero(x):
                raise NotAnIdealError("ideal is not inside the idempotent span", A.describe(x))
    return IdealSpec(A, J)
