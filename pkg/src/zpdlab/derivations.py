"""Spaces of derivation-type maps ``D: A -> M`` and the theorem verifiers built on them.

A map is vectorized column by column: coordinate ``j * m + k`` is the ``k``-th
coordinate of ``D(e_j)``. Every defining identity is a sum of terms
``c * x D(v) y`` with ``x, y`` in ``A`` (or absent), which is linear in ``D``;
imposing it on basis pairs gives a finite homogeneous system.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

from .algebra import (
    Algebra, Bimodule, LinearMap, act, bracket_abm, bracket_amb, jordan, module_jordan, multiply,
)
from .certificate import Certificate, Outcome
from .errors import HypothesisError, UnsupportedAlgebraError
from .idempotents import IdealSpec, IdempotentFamily, idempotent_span, standard_family
from .linalg import (
    ONE, ZERO, Subspace, solve_homogeneous, subspace_contains, subspace_equal,
    subspace_intersect, vadd, vscale, vsub,
)
from .zero_products import PairMode, generate_pairs, random_element, random_scalar
from .zpd import accumulate_pair_span

__all__ = [
    "ConditionTag", "MapSpace", "definition_space", "central_d1_space", "condition_space",
    "check_condition_M", "delta_transform", "verify_theorem_d1", "verify_theorem_d2",
    "verify_theorem_dd2", "verify_lemma_f", "map_in_space",
]


class ConditionTag(str, Enum):
    D1 = "d1"
    D2 = "d2"
    D3 = "d3"
    D4 = "d4"
    DERIVATION = "derivation"
    JORDAN_DERIVATION = "jordan_derivation"
    GEN_DERIVATION = "gen_derivation"
    GEN_JORDAN_DERIVATION = "gen_jordan_derivation"
    ANTI_DERIVATION = "anti_derivation"
    CENTRAL_D1 = "central_d1"


DEFINITION_TAGS = (
    ConditionTag.DERIVATION, ConditionTag.JORDAN_DERIVATION, ConditionTag.GEN_DERIVATION,
    ConditionTag.GEN_JORDAN_DERIVATION, ConditionTag.ANTI_DERIVATION,
)
CONDITION_TAGS = (ConditionTag.D1, ConditionTag.D2, ConditionTag.D3, ConditionTag.D4)

_PAIR_MODE = {
    ConditionTag.D1: PairMode.ONE_SIDED,
    ConditionTag.D2: PairMode.TWO_SIDED,
    ConditionTag.D3: PairMode.JORDAN,
    ConditionTag.D4: PairMode.TWO_SIDED,
}


@dataclass(frozen=True)
class MapSpace:
    algebra: Algebra
    bimodule: Bimodule
    space: Subspace
    tag: ConditionTag | None = None

    @property
    def dim(self) -> int:
        return self.space.dim

    def maps(self) -> list[LinearMap]:
        n, m = self.algebra.dim, self.bimodule.dim
        return [LinearMap.from_vector(v, n, m) for v in self.space.basis]

    def __contains__(self, D: LinearMap) -> bool:
        return map_in_space(D, self)

    def intersect(self, other: "MapSpace") -> "MapSpace":
        return MapSpace(self.algebra, self.bimodule, subspace_intersect(self.space, other.space))

    def contains(self, other: "MapSpace") -> bool:
        return subspace_contains(self.space, other.space)

    def equals(self, other: "MapSpace") -> bool:
        return subspace_equal(self.space, other.space)


def map_in_space(D: LinearMap, space: MapSpace) -> bool:
    return space.space.contains_vector(D.to_vector())


# -- constraint assembly --------------------------------------------------------

class _Terms:
    """Accumulates ``sum c * x D(v) y`` as ``m`` sparse rows over the ``n * m`` unknowns.

    ``x`` and ``y`` are basis indices (or ``None``); ``v`` is an algebra element.
    """

    def __init__(self, M: Bimodule):
        self.M = M
        self.m = M.dim
        self.rows = [dict() for _ in range(self.m)]
        self._cache: dict = {}

    def _op(self, x, y):
        key = (x, y)
        op = self._cache.get(key)
        if op is None:
            m = self.m
            L = self.M.left_basis_matrices[x].entries if x is not None else None
            R = self.M.right_basis_matrices[y].entries if y is not None else None
            op = []
            for r in range(m):
                for k in range(m):
                    # (x D y)_r = sum_k (L_x R_y)[r][k] D_k
                    if L is None and R is None:
                        z = ONE if r == k else ZERO
                    elif R is None:
                        z = L[r][k]
                    elif L is None:
                        z = R[r][k]
                    else:
                        z = ZERO
                        for s in range(m):
                            if L[r][s] and R[s][k]:
                                z = z + L[r][s] * R[s][k]
                    if z:
                        op.append((r, k, z))
            self._cache[key] = op
        return op

    def add(self, coef, x, v: Sequence, y) -> None:
        op = self._op(x, y)
        m = self.m
        rows = self.rows
        for j, vj in enumerate(v):
            if not vj:
                continue
            cj = coef * vj
            base = j * m
            for r, k, z in op:
                row = rows[r]
                col = base + k
                row[col] = row.get(col, ZERO) + cj * z

    def take(self) -> list:
        out = [{c: x for c, x in row.items() if x} for row in self.rows]
        self.rows = [dict() for _ in range(self.m)]
        return out


def _definition_rows(A: Algebra, M: Bimodule, tag: ConditionTag) -> list:
    n = A.dim
    terms = _Terms(M)
    rows = []
    unit = A.unit
    for i in range(n):
        ei = A.basis(i)
        for j in range(n):
            ej = A.basis(j)
            if tag in (ConditionTag.DERIVATION, ConditionTag.GEN_DERIVATION):
                # D(ab) - D(a) b - a D(b) [+ a D(1) b]
                terms.add(ONE, None, multiply(A, ei, ej), None)
                terms.add(-ONE, None, ei, j)
                terms.add(-ONE, i, ej, None)
                if tag is ConditionTag.GEN_DERIVATION:
                    terms.add(ONE, i, unit, j)
            elif tag in (ConditionTag.JORDAN_DERIVATION, ConditionTag.GEN_JORDAN_DERIVATION):
                # D(a o b) - D(a).b - a.D(b) [+ a D(1) b + b D(1) a]
                terms.add(ONE, None, jordan(A, ei, ej), None)
                terms.add(-ONE, None, ei, j)
                terms.add(-ONE, j, ei, None)
                terms.add(-ONE, i, ej, None)
                terms.add(-ONE, None, ej, i)
                if tag is ConditionTag.GEN_JORDAN_DERIVATION:
                    terms.add(ONE, i, unit, j)
                    terms.add(ONE, j, unit, i)
            elif tag is ConditionTag.ANTI_DERIVATION:
                # D(ab) - D(b) a - b D(a)
                terms.add(ONE, None, multiply(A, ei, ej), None)
                terms.add(-ONE, None, ej, i)
                terms.add(-ONE, j, ei, None)
            else:
                raise ValueError(f"{tag} is not a definition tag")
            rows.extend(terms.take())
    return rows


def definition_space(A: Algebra, M: Bimodule, tag: ConditionTag) -> MapSpace:
    """Exact space of maps satisfying a derivation-type identity on all basis pairs."""
    tag = ConditionTag(tag)
    if tag is ConditionTag.CENTRAL_D1:
        return central_d1_space(A, M)
    if tag not in DEFINITION_TAGS:
        raise ValueError(f"{tag.value} is a zero-product condition; use condition_space")
    rows = _definition_rows(A, M, tag)
    return MapSpace(A, M, solve_homogeneous(rows, A.dim * M.dim), tag)


def central_d1_space(A: Algebra, M: Bimodule) -> MapSpace:
    """Maps with ``a D(1) = D(1) a`` for all ``a``."""
    terms = _Terms(M)
    rows = []
    for i in range(A.dim):
        terms.add(ONE, i, A.unit, None)
        terms.add(-ONE, None, A.unit, i)
        rows.extend(terms.take())
    return MapSpace(A, M, solve_homogeneous(rows, A.dim * M.dim), ConditionTag.CENTRAL_D1)


def _pair_span(A: Algebra, tag: ConditionTag, seed: int, budget: int | None,
               family: IdempotentFamily | None):
    mode = _PAIR_MODE[tag]
    pairs = generate_pairs(A, mode, seed, budget, family)
    # two-sided and Jordan pair sets are closed under swapping
    acc = accumulate_pair_span(pairs, symmetric=mode is not PairMode.ONE_SIDED)
    return pairs, acc


def condition_space(
    A: Algebra,
    M: Bimodule,
    tag: ConditionTag,
    seed: int = 0,
    budget: int | None = None,
    family: IdempotentFamily | None = None,
) -> MapSpace:
    """Maps satisfying (d1)-(d4) on every generated zero pair.

    The constraint is linear in the pair tensor, so it is imposed on a basis of
    the span of the pair tensors. With finitely many pairs this can only
    over-approximate the true condition space.
    """
    tag = ConditionTag(tag)
    if tag not in CONDITION_TAGS:
        raise ValueError(f"{tag.value} is not a zero-product condition")
    n = A.dim
    _, acc = _pair_span(A, tag, seed, budget, family)
    terms = _Terms(M)
    rows = []
    jordan_form = tag in (ConditionTag.D3, ConditionTag.D4)
    for sigma in acc.space.basis:
        for idx, s in enumerate(sigma):
            if not s:
                continue
            i, j = divmod(idx, n)
            # a D(b) + D(a) b  (plus D(b) a + b D(a) for the Jordan forms)
            terms.add(s, i, A.basis(j), None)
            terms.add(s, None, A.basis(i), j)
            if jordan_form:
                terms.add(s, None, A.basis(j), i)
                terms.add(s, j, A.basis(i), None)
        rows.extend(terms.take())
    return MapSpace(A, M, solve_homogeneous(rows, n * M.dim), tag)


# -- condition M -------------------------------------------------------------------

def _sandwich_matrix_rows(M: Bimodule, x: Sequence, y: Sequence) -> list:
    """Rows of ``m -> x m y`` (``m x m`` matrix)."""
    cols = []
    for k in range(M.dim):
        mk = tuple(ONE if t == k else ZERO for t in range(M.dim))
        cols.append(act(M, y, act(M, x, mk, "left"), "right"))
    return [list(r) for r in zip(*cols)]


def check_condition_M(
    A: Algebra, M: Bimodule, J: IdealSpec, family: IdempotentFamily | None = None
) -> Certificate:
    """Does ``x m x = 0`` for all ``x`` in ``J`` force ``m = 0``?

    Over a subspace the quadratic condition polarizes to the linear system
    ``x m y + y m x = 0`` on basis pairs of ``J``. Also reports the weaker
    ``x m = m x = 0`` form. ``J`` must lie in the span of an idempotent family;
    when that cannot be confirmed the outcome is inconclusive.
    """
    basis = J.space.basis
    m = M.dim
    polar_rows = []
    for a, x in enumerate(basis):
        for y in basis[a:]:
            r1 = _sandwich_matrix_rows(M, x, y)
            r2 = _sandwich_matrix_rows(M, y, x)
            polar_rows.extend([u + v for u, v in zip(row1, row2)] for row1, row2 in zip(r1, r2))
    polar = solve_homogeneous(polar_rows, m) if polar_rows else Subspace.full(m)
    weak_rows = []
    for x in basis:
        weak_rows.extend(list(r) for r in M.left_matrix(x).entries)
        weak_rows.extend(list(r) for r in M.right_matrix(x).entries)
    weak = solve_homogeneous(weak_rows, m) if weak_rows else Subspace.full(m)
    details = {
        "ideal_dim": J.space.dim,
        "polarized_kernel_dim": polar.dim,
        "weak_kernel_dim": weak.dim,
        "weak_condition": weak.dim == 0,
    }
    try:
        fam = family or standard_family(A)
        inside = subspace_contains(idempotent_span(A, fam), J.space)
    except UnsupportedAlgebraError:
        inside = False
    details["ideal_in_idempotent_span"] = inside
    if polar.dim:
        return Certificate(Outcome.REFUTED, witness={"m": polar.basis[0]}, details=details)
    if not inside:
        return Certificate(Outcome.INCONCLUSIVE,
                           witness={"reason": "ideal not shown to lie in the idempotent span"},
                           details=details)
    return Certificate(Outcome.CERTIFIED, details=details)


def delta_transform(D: LinearMap, M: Bimodule) -> LinearMap:
    """``Delta(a) = D(a) - a D(1)``; always ``Delta(1) = 0``."""
    A = M.algebra
    d1 = D(A.unit)
    cols = [vsub(D.column(i), act(M, A.basis(i), d1, "left")) for i in range(A.dim)]
    return LinearMap.from_columns(cols, M.dim)


# -- theorem verifiers ------------------------------------------------------------

def _space_details(**spaces) -> dict:
    return {f"dim_{k}": v.dim for k, v in spaces.items()}


def _check_ideal_in_span(A, J, family):
    fam = family or standard_family(A)
    if not subspace_contains(idempotent_span(A, fam), J.space):
        raise HypothesisError("ideal J is not contained in the span of the idempotent family")
    return fam


def verify_theorem_d1(
    A: Algebra,
    M: Bimodule,
    J: IdealSpec,
    seed: int = 0,
    budget: int | None = None,
    family: IdempotentFamily | None = None,
) -> Certificate:
    """Maps with (d1) are exactly the generalized derivations with central ``D(1)``.

    The right-hand space sits inside the true (d1) space, which sits inside
    the sampled one; equality of the outer two certifies the instance.
    """
    fam = _check_ideal_in_span(A, J, family)
    hyp = check_condition_M(A, M, J, fam)
    if not hyp.details["weak_condition"]:
        raise HypothesisError("{m : xm = mx = 0 for x in J} is not zero", hyp)
    inner = definition_space(A, M, ConditionTag.GEN_DERIVATION).intersect(central_d1_space(A, M))
    sampled = condition_space(A, M, ConditionTag.D1, seed, budget, fam)
    details = _space_details(gen_derivation_central=inner, d1=sampled)
    details["dim_derivation"] = definition_space(A, M, ConditionTag.DERIVATION).dim
    if not sampled.contains(inner):
        return Certificate(Outcome.REFUTED, witness={"reason": "generalized derivation violates (d1)"},
                           seed=seed, details=details)
    outcome = Outcome.CERTIFIED if sampled.equals(inner) else Outcome.INCONCLUSIVE
    return Certificate(outcome, witness={"basis": inner.space.basis}, seed=seed, details=details)


def _require_condition_M(A, M, J, family):
    hyp = check_condition_M(A, M, J, family)
    if not hyp.certified:
        raise HypothesisError(f"condition M not certified ({hyp.outcome.value})", hyp)
    return hyp


def verify_theorem_d2(
    A: Algebra,
    M: Bimodule,
    J: IdealSpec,
    seed: int = 0,
    budget: int | None = None,
    family: IdempotentFamily | None = None,
) -> Certificate:
    """(d3) and (d4) both cut out the generalized Jordan derivations with central ``D(1)``."""
    _require_condition_M(A, M, J, family)
    fam = family or standard_family(A)
    inner = definition_space(A, M, ConditionTag.GEN_JORDAN_DERIVATION).intersect(central_d1_space(A, M))
    d3 = condition_space(A, M, ConditionTag.D3, seed, budget, fam)
    d4 = condition_space(A, M, ConditionTag.D4, seed, budget, fam)
    details = _space_details(gen_jordan_central=inner, d3=d3, d4=d4)
    if not (d3.contains(inner) and d4.contains(inner)):
        return Certificate(Outcome.REFUTED,
                           witness={"reason": "generalized Jordan derivation violates (d3)/(d4)"},
                           seed=seed, details=details)
    same = d3.equals(inner) and d4.equals(inner)
    return Certificate(Outcome.CERTIFIED if same else Outcome.INCONCLUSIVE,
                       witness={"basis": inner.space.basis}, seed=seed, details=details)


def verify_theorem_dd2(
    A: Algebra,
    M: Bimodule,
    J: IdealSpec,
    seed: int = 0,
    budget: int | None = None,
    family: IdempotentFamily | None = None,
) -> Certificate:
    """(d2) maps are generalized Jordan derivations with central ``D(1)``; anti-derivations satisfy (d2).

    Whether the (d2) space equals the generalized Jordan space is left open;
    both dimensions are reported. Anti-derivations that are not derivations
    are listed as witnesses.
    """
    _require_condition_M(A, M, J, family)
    fam = family or standard_family(A)
    inner = definition_space(A, M, ConditionTag.GEN_JORDAN_DERIVATION).intersect(central_d1_space(A, M))
    d2 = condition_space(A, M, ConditionTag.D2, seed, budget, fam)
    anti = definition_space(A, M, ConditionTag.ANTI_DERIVATION)
    derivations = definition_space(A, M, ConditionTag.DERIVATION)
    non_derivations = [v for v in anti.space.basis if not derivations.space.contains_vector(v)]
    details = _space_details(gen_jordan_central=inner, d2=d2, anti_derivation=anti, derivation=derivations)
    details["d2_equals_gen_jordan_central"] = d2.equals(inner)
    witness = {"anti_derivations_not_derivations": non_derivations}
    if not d2.contains(anti):
        return Certificate(Outcome.REFUTED, witness={"reason": "anti-derivation violates (d2)"},
                           seed=seed, details=details)
    if not inner.contains(d2):
        return Certificate(Outcome.INCONCLUSIVE, witness=witness, seed=seed, details=details)
    return Certificate(Outcome.CERTIFIED, witness=witness, seed=seed, details=details)


# -- bracket identities ----------------------------------------------------------

def _random_module_element(M: Bimodule, rng: random.Random):
    return tuple(random_scalar(rng) for _ in range(M.dim))


def verify_lemma_f(
    M: Bimodule,
    samples: int = 1000,
    seed: int = 0,
    amb: Callable = bracket_amb,
    abm: Callable = bracket_abm,
) -> Certificate:
    """Check the five triple-bracket identities on random ``(a, b, c, m)``.

    ``amb`` and ``abm`` are the bracket implementations under test.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    A = M.algebra
    rng = random.Random(seed)
    two = lambda v: vscale(2, v)  # noqa: E731
    jm = lambda a, m: module_jordan(M, a, m)  # noqa: E731
    ja = lambda a, b: jordan(A, a, b)  # noqa: E731

    def triple(a, b, c):
        # [a, b, c] inside A
        return vadd(multiply(A, multiply(A, a, b), c), multiply(A, multiply(A, c, b), a))

    for idx in range(samples):
        a, b, c = (random_element(A, rng) for _ in range(3))
        m = _random_module_element(M, rng)
        checks = {
            "2[a,m,b]": (two(amb(M, a, m, b)),
                         vsub(vadd(jm(a, jm(b, m)), jm(b, jm(a, m))), jm(ja(a, b), m))),
            "2[a,b,m]": (two(abm(M, a, b, m)),
                         vsub(vadd(jm(a, jm(b, m)), jm(ja(a, b), m)), jm(b, jm(a, m)))),
            "[m,a o b,c]": (abm(M, c, ja(a, b), m),
                            vsub(vadd(abm(M, c, a, jm(b, m)), abm(M, ja(b, c), a, m)),
                                 jm(b, abm(M, c, a, m)))),
            "[a,b.m,c] (first)": (amb(M, a, jm(b, m), c),
                                  vsub(vadd(abm(M, c, b, jm(a, m)), abm(M, a, b, jm(c, m))),
                                       jm(triple(a, b, c), m))),
            "[a,b.m,c] (second)": (amb(M, a, jm(b, m), c),
                                   vsub(vadd(amb(M, ja(a, b), m, c), amb(M, a, m, ja(b, c))),
                                        jm(b, amb(M, a, m, c)))),
        }
        for name, (lhs, rhs) in checks.items():
            if lhs != rhs:
                return Certificate(Outcome.REFUTED,
                                   witness={"identity": name, "sample": idx, "a": a, "b": b, "c": c, "m": m},
                                   seed=seed)
    return Certificate(Outcome.CERTIFIED, seed=seed, details={"samples": samples, "identities": 5})

