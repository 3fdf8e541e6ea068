"""Zero-product-determined checks and bilinear maps vanishing on zero products.

Tensors ``a ⊗ b`` live in the ``n²``-dimensional coordinate space with index
``i * n + j``. A bilinear map vanishing on a set of pairs is exactly a linear
functional vanishing on the span of their tensors, which is what every solver
here computes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .algebra import Algebra, BilinearMap, LinearMap, jordan, multiply
from .certificate import Certificate, Outcome
from .errors import FactorizationError, HypothesisError, PreconditionError
from .idempotents import IdempotentFamily, check_full_idempotent_span, standard_family
from .linalg import (
    ONE, ZERO, EchelonBuilder, Scalar, Subspace, is_zero_vector, solve_homogeneous,
    subspace_contains, subspace_equal, vadd, vscale,
)
from .zero_products import PairMode, ZeroPairSet, generate_pairs, random_element

__all__ = [
    "Product", "PairSpan", "tensor", "mult_kernel", "zero_pair_span", "accumulate_pair_span",
    "check_zpd", "factor_through_product", "verify_ds_identities", "solve_bilinear_space",
    "bilinear_space_from_products", "check_prop_n",
]


class Product(str, Enum):
    ORDINARY = "ordinary"
    JORDAN = "jordan"

    @property
    def pair_mode(self) -> PairMode:
        return PairMode.ONE_SIDED if self is Product.ORDINARY else PairMode.JORDAN


def tensor(a: Sequence[Scalar], b: Sequence[Scalar]) -> dict:
    """Sparse coordinates of ``a ⊗ b``."""
    n = len(a)
    nz_b = [(j, y) for j, y in enumerate(b) if y]
    return {i * n + j: x * y for i, x in enumerate(a) if x for j, y in nz_b}


def _product_rows(A: Algebra, product: Product) -> list:
    n = A.dim
    rows = [dict() for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, c in A.table[i][j]:
                rows[k][i * n + j] = rows[k].get(i * n + j, ZERO) + c
                if product is Product.JORDAN:
                    rows[k][j * n + i] = rows[k].get(j * n + i, ZERO) + c
    return rows


def mult_kernel(A: Algebra, product: Product = Product.ORDINARY) -> Subspace:
    """Kernel of the linearized product ``A ⊗ A -> A``."""
    return solve_homogeneous(_product_rows(A, Product(product)), A.dim ** 2)


@dataclass
class PairSpan:
    space: Subspace
    used: int                 # pairs consumed from the set
    generators: tuple         # pairs that raised the dimension
    stopped_early: bool = False


def accumulate_pair_span(
    pairs: ZeroPairSet,
    *,
    symmetric: bool = False,
    target: Subspace | None = None,
    window: int | None = None,
) -> PairSpan:
    """Span of the pair tensors, consumed in order.

    Stops once ``target`` is reached (its dimension bounds the span from
    above), or once ``window`` consecutive kernel-sampled pairs leave the
    dimension unchanged. The leading structured pairs are always consumed.
    ``symmetric`` adds ``b ⊗ a`` next to ``a ⊗ b``.
    """
    n = pairs.algebra.dim
    builder = EchelonBuilder(n * n)
    generators = []
    stale = 0
    used = 0
    for idx, (a, b) in enumerate(pairs.pairs):
        if target is not None and builder.rank >= target.dim:
            break
        if window is not None and idx >= pairs.structured and stale >= window:
            return PairSpan(builder.subspace(), used, tuple(generators), stopped_early=True)
        used += 1
        grew = builder.add(tensor(a, b))
        if symmetric:
            grew = builder.add(tensor(b, a)) or grew
        if grew:
            generators.append((a, b))
            stale = 0
        elif idx >= pairs.structured:
            stale += 1
    return PairSpan(builder.subspace(), used, tuple(generators))


def zero_pair_span(A: Algebra, pairs: ZeroPairSet | Sequence) -> Subspace:
    """``span{a ⊗ b}`` over the given pairs."""
    n = A.dim
    seq = pairs.pairs if isinstance(pairs, ZeroPairSet) else pairs
    return EchelonBuilder(n * n).extend(tensor(a, b) for a, b in seq).subspace()


def check_zpd(
    A: Algebra,
    mode: Product = Product.ORDINARY,
    seed: int = 0,
    budget: int | None = None,
    family: IdempotentFamily | None = None,
) -> Certificate:
    """Certify that every bilinear map vanishing on zero (Jordan) products factors through the product.

    Certified when the sampled pair tensors span the whole kernel of the
    linearized product. Sampling only ever bounds the span from below, so a
    shortfall is reported as inconclusive, never as a refutation.
    """
    mode = Product(mode)
    pairs = generate_pairs(A, mode.pair_mode, seed, budget, family)
    K = mult_kernel(A, mode)
    acc = accumulate_pair_span(pairs, target=K, window=3 * A.dim)
    details = {
        "mode": mode.value,
        "span_dim": acc.space.dim,
        "kernel_dim": K.dim,
        "pairs_available": len(pairs),
        "budget": 50 * A.dim if budget is None else budget,
        "stopped_early": acc.stopped_early,
    }
    if not subspace_contains(K, acc.space):
        # a pair tensor outside the kernel means a broken pair generator
        return Certificate(Outcome.REFUTED, witness={"reason": "pair span escapes product kernel"},
                           generators_used=acc.used, seed=seed, details=details)
    outcome = Outcome.CERTIFIED if subspace_contains(acc.space, K) else Outcome.INCONCLUSIVE
    return Certificate(outcome, witness={"pairs": acc.generators}, generators_used=acc.used,
                       seed=seed, details=details)


def _first_nonvanishing(phi: BilinearMap, pairs: ZeroPairSet):
    for a, b in pairs:
        if not is_zero_vector(phi(a, b)):
            return a, b
    return None


def factor_through_product(
    A: Algebra,
    phi: BilinearMap,
    mode: Product = Product.ORDINARY,
    seed: int = 0,
    budget: int | None = None,
    certificate: Certificate | None = None,
) -> LinearMap:
    """Return ``T`` with ``phi(a, b) = T(ab)`` (or ``T(a o b)`` in Jordan mode).

    ``T(a) = phi(a, 1)``, halved in the Jordan case. The factorization is
    checked on every basis pair before returning.
    """
    mode = Product(mode)
    pairs = generate_pairs(A, mode.pair_mode, seed, budget)
    bad = _first_nonvanishing(phi, pairs)
    if bad is not None:
        raise PreconditionError("bilinear map does not vanish on a zero pair", witness=bad)
    if certificate is None:
        certificate = check_zpd(A, mode, seed, budget)
    if not certificate.certified:
        raise PreconditionError(f"zero-product determinedness not certified ({mode.value})")
    scale = ONE if mode is Product.ORDINARY else Scalar(Fraction(1, 2))
    T = LinearMap.from_function(A, lambda a: vscale(scale, phi(a, A.unit)), phi.target_dim)
    prod = multiply if mode is Product.ORDINARY else jordan
    for i in range(A.dim):
        for j in range(A.dim):
            ei, ej = A.basis(i), A.basis(j)
            if phi(ei, ej) != T(prod(A, ei, ej)):
                raise FactorizationError("factorization fails on a basis pair",
                                         witness=(A.labels[i], A.labels[j]))
    return T


def verify_ds_identities(
    A: Algebra,
    phi: BilinearMap,
    fam: IdempotentFamily | None = None,
    samples: int = 100,
    seed: int = 0,
    budget: int | None = None,
) -> Certificate:
    """Check ``phi(x,1) = phi(1,x)`` and ``phi(a,x) + phi(x,a) = phi(ax,1) + phi(1,xa)``.

    ``x`` runs over the family (both identities are linear in ``x``) and ``a``
    over ``samples`` random elements. ``phi`` must vanish on the generated
    two-sided zero pairs.
    """
    pairs = generate_pairs(A, PairMode.TWO_SIDED, seed, budget, fam)
    bad = _first_nonvanishing(phi, pairs)
    if bad is not None:
        raise PreconditionError("bilinear map does not vanish on a two-sided zero pair", witness=bad)
    if fam is None:
        fam = standard_family(A)
    one = A.unit
    for x in fam:
        if phi(x, one) != phi(one, x):
            return Certificate(Outcome.REFUTED, witness={"x": x, "identity": "phi(x,1)=phi(1,x)"},
                               seed=seed)
    rng = random.Random(seed)
    for _ in range(samples):
        a = random_element(A, rng)
        for x in fam:
            lhs = vadd(phi(a, x), phi(x, a))
            rhs = vadd(phi(multiply(A, a, x), one), phi(one, multiply(A, x, a)))
            if lhs != rhs:
                return Certificate(Outcome.REFUTED, witness={"a": a, "x": x}, seed=seed,
                                   details={"identity": "phi(a,x)+phi(x,a)=phi(ax,1)+phi(1,xa)"})
    return Certificate(Outcome.CERTIFIED, generators_used=len(pairs), seed=seed,
                       details={"samples": samples, "family_size": len(fam)})


def _symmetric_pair_modes(mode: PairMode) -> bool:
    return mode in (PairMode.TWO_SIDED, PairMode.JORDAN)


def solve_bilinear_space(
    A: Algebra,
    target_dim: int,
    mode: PairMode,
    seed: int = 0,
    budget: int | None = None,
    symmetric: bool = False,
    family: IdempotentFamily | None = None,
) -> Subspace:
    """All ``phi: A x A -> C^t`` vanishing on the generated pairs, optionally symmetric.

    Coordinates are ``(i * n + j) * t + s``.
    """
    if target_dim < 1:
        raise ValueError("target dimension must be at least 1")
    mode = PairMode(mode)
    n, t = A.dim, target_dim
    pairs = generate_pairs(A, mode, seed, budget, family)
    span = accumulate_pair_span(pairs, symmetric=_symmetric_pair_modes(mode)).space
    rows = []
    for sigma in span.basis:
        nz = [(idx, x) for idx, x in enumerate(sigma) if x]
        for s in range(t):
            rows.append({idx * t + s: x for idx, x in nz})
    if symmetric:
        for i in range(n):
            for j in range(i + 1, n):
                for s in range(t):
                    rows.append({(i * n + j) * t + s: ONE, (j * n + i) * t + s: -ONE})
    return solve_homogeneous(rows, n * n * t)


def bilinear_space_from_products(A: Algebra, target_dim: int, product: Product) -> Subspace:
    """``{(a, b) -> T(ab)}`` (or ``T(a o b)``) as ``T`` ranges over all linear maps."""
    n, t = A.dim, target_dim
    prod = multiply if Product(product) is Product.ORDINARY else jordan
    products = [[prod(A, A.basis(i), A.basis(j)) for j in range(n)] for i in range(n)]
    vecs = []
    for k in range(n):
        for s in range(t):
            v = [ZERO] * (n * n * t)
            for i in range(n):
                for j in range(n):
                    c = products[i][j][k]
                    if c:
                        v[(i * n + j) * t + s] = c
            vecs.append(v)
    return Subspace.span(vecs, n * n * t)


def check_prop_n(
    A: Algebra,
    target_dim: int,
    seed: int = 0,
    budget: int | None = None,
    family: IdempotentFamily | None = None,
) -> Certificate:
    """Compare three spaces of bilinear maps into ``C^t``.

    (i) symmetric maps vanishing on two-sided zero pairs, (ii) maps vanishing
    on Jordan zero pairs, (iii) maps ``T(a o b)``. Requires ``A`` spanned by
    idempotents.
    """
    hyp = check_full_idempotent_span(A, family)
    if not hyp.certified:
        raise HypothesisError("algebra not certified to be spanned by idempotents", hyp)
    fam = family or standard_family(A)
    sym_two_sided = solve_bilinear_space(A, target_dim, PairMode.TWO_SIDED, seed, budget,
                                         symmetric=True, family=fam)
    jordan_vanishing = solve_bilinear_space(A, target_dim, PairMode.JORDAN, seed, budget, family=fam)
    factored = bilinear_space_from_products(A, target_dim, Product.JORDAN)
    details = {
        "target_dim": target_dim,
        "dim_symmetric_two_sided": sym_two_sided.dim,
        "dim_jordan_vanishing": jordan_vanishing.dim,
        "dim_jordan_factored": factored.dim,
    }
    if not (subspace_contains(sym_two_sided, factored) and subspace_contains(jordan_vanishing, factored)):
        return Certificate(Outcome.REFUTED, witness={"reason": "factored maps escape a vanishing space"},
                           seed=seed, details=details)
    same = subspace_equal(sym_two_sided, factored) and subspace_equal(jordan_vanishing, factored)
    return Certificate(Outcome.CERTIFIED if same else Outcome.INCONCLUSIVE, seed=seed, details=details)
