"""Certified zero-product pairs: the constraint sources for every solver.

The zero-product set ``{(a, b) : ab = 0}`` is a variety, not a subspace, so
pairs are produced two ways. First come the idempotent constructions that the
structure theory relies on (``(aq, p)`` with ``q = 1 - p`` and friends), one
round per algebra dimension so that the random ``a`` values span the algebra.
Then kernel sampling: for a random zero divisor ``a`` every basis vector of its
annihilator is paired with it. Each pair is re-checked before it is kept.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .algebra import Algebra, multiply
from .errors import UnsupportedAlgebraError
from .idempotents import IdempotentFamily, standard_family
from .linalg import (
    Scalar, Subspace, Vector, is_zero_vector, solve_homogeneous, vadd, vsub,
)

__all__ = [
    "PairMode", "ZeroPairSet", "random_scalar", "random_element", "holds",
    "right_annihilator", "left_annihilator", "two_sided_annihilator", "jordan_annihilator",
    "annihilator", "generate_pairs",
]


class PairMode(str, Enum):
    ONE_SIDED = "one_sided"   # ab = 0
    TWO_SIDED = "two_sided"   # ab = ba = 0
    JORDAN = "jordan"         # ab + ba = 0


def holds(A: Algebra, mode: PairMode, a: Sequence, b: Sequence) -> bool:
    ab = multiply(A, a, b)
    if mode is PairMode.ONE_SIDED:
        return is_zero_vector(ab)
    ba = multiply(A, b, a)
    if mode is PairMode.TWO_SIDED:
        return is_zero_vector(ab) and is_zero_vector(ba)
    return is_zero_vector(vadd(ab, ba))


@dataclass(frozen=True)
class ZeroPairSet:
    """Pairs satisfying ``mode``'s relation; ``structured`` counts the leading proof-driven pairs."""

    algebra: Algebra
    mode: PairMode
    pairs: tuple
    structured: int = 0
    seed: int | None = None

    def __post_init__(self):
        for idx, (a, b) in enumerate(self.pairs):
            if not holds(self.algebra, self.mode, a, b):
                raise ValueError(f"pair {idx} does not satisfy the {self.mode.value} relation")

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def random_scalar(rng: random.Random) -> Scalar:
    """Gaussian rational with parts in [-3, 3] over a denominator in {1, 2}."""
    d = rng.choice((1, 2))
    return Scalar._raw(rng.randint(-3, 3), rng.randint(-3, 3), d)


def random_element(A: Algebra, rng: random.Random) -> Vector:
    return tuple(random_scalar(rng) for _ in range(A.dim))


def _kernel_of_columns(A: Algebra, cols: list) -> Subspace:
    # cols[j] is the image of e_j; constraint rows are the transposed columns
    return solve_homogeneous(list(zip(*cols)), A.dim)


def right_annihilator(A: Algebra, a: Sequence) -> Subspace:
    """``{b : ab = 0}``."""
    return _kernel_of_columns(A, [multiply(A, a, A.basis(j)) for j in range(A.dim)])


def left_annihilator(A: Algebra, a: Sequence) -> Subspace:
    """``{b : ba = 0}``."""
    return _kernel_of_columns(A, [multiply(A, A.basis(j), a) for j in range(A.dim)])


def two_sided_annihilator(A: Algebra, a: Sequence) -> Subspace:
    left = [multiply(A, a, A.basis(j)) for j in range(A.dim)]
    right = [multiply(A, A.basis(j), a) for j in range(A.dim)]
    rows = list(zip(*left)) + list(zip(*right))
    return solve_homogeneous(rows, A.dim)


def jordan_annihilator(A: Algebra, a: Sequence) -> Subspace:
    """``{b : ab + ba = 0}``."""
    return _kernel_of_columns(
        A, [vadd(multiply(A, a, A.basis(j)), multiply(A, A.basis(j), a)) for j in range(A.dim)]
    )


def annihilator(A: Algebra, mode: PairMode, a: Sequence) -> Subspace:
    if mode is PairMode.ONE_SIDED:
        return right_annihilator(A, a)
    if mode is PairMode.TWO_SIDED:
        return two_sided_annihilator(A, a)
    return jordan_annihilator(A, a)


def _structured(A: Algebra, mode: PairMode, a: Vector, p: Vector, q: Vector) -> list:
    m = lambda x, y: multiply(A, x, y)  # noqa: E731
    if mode is PairMode.ONE_SIDED:
        return [(m(a, q), p), (m(a, p), q), (q, m(p, a)), (p, m(q, a))]
    paq = m(m(p, a), q)
    qap = m(m(q, a), p)
    pap = m(m(p, a), p)
    qaq = m(m(q, a), q)
    if mode is PairMode.JORDAN:
        p_q = vsub(p, q)
        return [(paq, p_q), (qap, p_q), (pap, q), (qaq, p)]
    return [
        (vadd(p, paq), vsub(q, paq)),
        (vadd(p, qap), vsub(q, qap)),
        (paq, paq),
        (qap, qap),
        (pap, q),
        (qaq, p),
    ]


def generate_pairs(
    A: Algebra,
    mode: PairMode,
    seed: int = 0,
    budget: int | None = None,
    family: IdempotentFamily | None = None,
) -> ZeroPairSet:
    """Deterministic list of at most ``budget`` verified zero pairs (default ``50 * dim``).

    Pairs with a zero entry carry no information and are dropped.
    """
    mode = PairMode(mode)
    if budget is None:
        budget = 50 * A.dim
    rng = random.Random(seed)
    if family is None:
        try:
            family = standard_family(A)
        except UnsupportedAlgebraError:
            family = None
    idems = list(family.elements) if family is not None else []
    unit = A.unit
    pairs: list = []

    def emit(a, b) -> bool:
        if len(pairs) >= budget:
            return False
        if is_zero_vector(a) or is_zero_vector(b):
            return True
        if holds(A, mode, a, b):
            pairs.append((a, b))
        return True

    # one round of (p, q) pairs for the two-sided mode, independent of a
    if mode is PairMode.TWO_SIDED:
        for p in idems:
            emit(p, vsub(unit, p))
    for _ in range(A.dim):
        a = random_element(A, rng)
        for p in idems:
            q = vsub(unit, p)
            for x, y in _structured(A, mode, a, p, q):
                if not emit(x, y):
                    break
    structured = len(pairs)

    complements = [vsub(unit, p) for p in idems]
    complements = [q for q in complements if not is_zero_vector(q)]
    attempts = 0
    while len(pairs) < budget and attempts < 4 * budget:
        attempts += 1
        a = random_element(A, rng)
        if complements:
            q = complements[rng.randrange(len(complements))]
            a = multiply(A, a, q) if rng.random() < 0.5 else multiply(A, q, a)
        if is_zero_vector(a):
            continue
        for b in annihilator(A, mode, a).basis:
            if not emit(a, b):
                break
    return ZeroPairSet(A, mode, tuple(pairs), structured, seed)
