import random

import pytest

from zpdlab.algebra import BilinearMap, LinearMap, jordan, matrix_algebra, multiply, triangular_algebra
from zpdlab.certificate import Outcome
from zpdlab.errors import HypothesisError, PreconditionError
from zpdlab.idempotents import IdempotentFamily
from zpdlab.linalg import Scalar, Subspace, vlincomb, vscale
from zpdlab.zero_products import PairMode, generate_pairs, random_scalar
from zpdlab.zpd import (
    Product, accumulate_pair_span, bilinear_space_from_products, check_prop_n, check_zpd,
    factor_through_product, mult_kernel, solve_bilinear_space, tensor, verify_ds_identities,
    zero_pair_span,
)

F = matrix_algebra(1)
M2 = matrix_algebra(2)
T2 = triangular_algebra(2)


def random_map(A, t, rng) -> LinearMap:
    return LinearMap(A.dim, t, [[random_scalar(rng) for _ in range(A.dim)] for _ in range(t)])


def random_member(space: Subspace, rng):
    return vlincomb([random_scalar(rng) for _ in space.basis], space.basis, space.ambient_dim)


def test_tensor_coordinates():
    a, b = M2.vec(E12=2), M2.vec(E21=3)
    assert tensor(a, b) == {1 * 4 + 2: Scalar(6)}


@pytest.mark.parametrize("A,product,dim", [
    (M2, Product.ORDINARY, 12), (M2, Product.JORDAN, 12), (F, Product.ORDINARY, 0),
    (T2, Product.ORDINARY, 6), (matrix_algebra(3), Product.JORDAN, 72),
])
def test_mult_kernel_dims(A, product, dim):
    assert mult_kernel(A, product).dim == dim


def test_zero_pair_span():
    pairs = generate_pairs(M2, PairMode.ONE_SIDED, seed=0, budget=200)
    assert zero_pair_span(M2, pairs).dim == 12
    assert zero_pair_span(M2, []) == Subspace.zero(16)
    assert zero_pair_span(F, generate_pairs(F, PairMode.ONE_SIDED)) == Subspace.zero(1)


def test_accumulation_stops_at_target():
    pairs = generate_pairs(M2, PairMode.ONE_SIDED, seed=0, budget=200)
    acc = accumulate_pair_span(pairs, target=mult_kernel(M2))
    assert acc.space.dim == 12 and acc.used < len(pairs)
    assert len(acc.generators) == 12


@pytest.mark.parametrize("A", [M2, T2], ids=lambda A: A.name)
@pytest.mark.parametrize("mode", list(Product))
def test_check_zpd_certified(A, mode):
    cert = check_zpd(A, mode, seed=0)
    assert cert.outcome is Outcome.CERTIFIED
    assert cert.details["span_dim"] == cert.details["kernel_dim"] == A.dim ** 2 - A.dim
    assert cert.generators_used > 0


def test_check_zpd_without_budget_is_inconclusive():
    assert check_zpd(M2, Product.ORDINARY, budget=0).outcome is Outcome.INCONCLUSIVE


def test_certificate_pairs_reverify():
    cert = check_zpd(T2, Product.ORDINARY, seed=5)
    pairs = list(cert.witness["pairs"])
    assert all(multiply(T2, a, b) == T2.vec() for a, b in pairs)
    assert zero_pair_span(T2, pairs) == mult_kernel(T2)


def test_factor_product_itself():
    phi = BilinearMap.from_function(M2, lambda a, b: multiply(M2, a, b), 4)
    T = factor_through_product(M2, phi)
    assert T == LinearMap.from_function(M2, lambda a: a, 4)


def test_factor_scaled_product():
    c = Scalar("2/3-i")
    phi = BilinearMap.from_function(M2, lambda a, b: vscale(c, multiply(M2, a, b)), 4)
    T = factor_through_product(M2, phi)
    assert T == LinearMap.from_function(M2, lambda a: vscale(c, a), 4)


def test_factor_jordan_mode():
    rng = random.Random(8)
    S = random_map(T2, 2, rng)
    phi = BilinearMap.from_function(T2, lambda a, b: S(jordan(T2, a, b)), 2)
    assert factor_through_product(T2, phi, Product.JORDAN) == S


def test_factor_rejects_nonvanishing_map():
    phi = BilinearMap.from_function(M2, lambda a, b: multiply(M2, b, a), 4)
    with pytest.raises(PreconditionError):
        factor_through_product(M2, phi)


def test_factor_roundtrip_on_solved_maps():
    space = solve_bilinear_space(M2, 2, PairMode.ONE_SIDED, seed=0)
    rng = random.Random(0)
    phi = BilinearMap.from_vector(random_member(space, rng), 4, 2)
    T = factor_through_product(M2, phi)
    for i in range(4):
        for j in range(4):
            assert phi(M2.basis(i), M2.basis(j)) == T(multiply(M2, M2.basis(i), M2.basis(j)))


def test_ds_identities_on_factored_maps():
    rng = random.Random(3)
    S = random_map(M2, 3, rng)
    jordan_phi = BilinearMap.from_function(M2, lambda a, b: S(jordan(M2, a, b)), 3)
    product_phi = BilinearMap.from_function(M2, lambda a, b: S(multiply(M2, a, b)), 3)
    assert verify_ds_identities(M2, jordan_phi, samples=50).certified
    assert verify_ds_identities(M2, product_phi, samples=50).certified


def test_ds_rejects_map_without_condition_g():
    rng = random.Random(4)
    phi = BilinearMap(4, 1, [[[random_scalar(rng)] for _ in range(4)] for _ in range(4)])
    with pytest.raises(PreconditionError):
        verify_ds_identities(M2, phi)


@pytest.mark.parametrize("mode", [PairMode.JORDAN, PairMode.ONE_SIDED])
def test_bilinear_space_dims(mode):
    assert solve_bilinear_space(M2, 4, mode, seed=0).dim == 16


def test_bilinear_space_field_case():
    assert solve_bilinear_space(F, 3, PairMode.TWO_SIDED).is_full


def test_products_space_matches_solved_space():
    solved = solve_bilinear_space(T2, 2, PairMode.ONE_SIDED, seed=1)
    assert solved == bilinear_space_from_products(T2, 2, Product.ORDINARY)


@pytest.mark.parametrize("A,t", [(M2, 4), (T2, 1), (F, 1)], ids=["M2", "T2", "F"])
def test_prop_n(A, t):
    cert = check_prop_n(A, t)
    assert cert.certified
    dims = {cert.details[k] for k in ("dim_symmetric_two_sided", "dim_jordan_vanishing", "dim_jordan_factored")}
    assert len(dims) == 1
    if A is M2:
        assert dims == {16}


def test_prop_n_requires_idempotent_span():
    with pytest.raises(HypothesisError):
        check_prop_n(M2, 1, family=IdempotentFamily(M2, (M2.vec(E11=1),)))
