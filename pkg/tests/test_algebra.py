import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zpdlab.algebra import (
    Algebra, Bimodule, BilinearMap, LinearMap, act, ambient_matrix_bimodule, block_triangular,
    bracket_abm, bracket_amb, jordan, matrix_algebra, matrix_units, module_jordan, multiply,
    regular_bimodule, remark_bimodule, triangular_algebra, verify_algebra, verify_bimodule,
)
from zpdlab.errors import AxiomError, DimensionError
from zpdlab.linalg import ONE, ZERO, Scalar, vscale, zero_vector
from zpdlab.zero_products import random_element

M2 = matrix_algebra(2)
T2 = triangular_algebra(2)


def perturbed(A: Algebra, i, j, k, delta=1):
    structure = [[list(cell) for cell in row] for row in A.structure]
    structure[i][j][k] = structure[i][j][k] + delta
    return structure


def test_matrix_unit_products():
    assert multiply(M2, M2.vec(E11=1), M2.vec(E12=1)) == M2.vec(E12=1)
    assert multiply(M2, M2.vec(E12=1), M2.vec(E12=1)) == zero_vector(4)


@pytest.mark.parametrize("A", [M2, T2, block_triangular([2, 1])], ids=lambda A: A.name)
def test_unit_law_on_random_elements(A):
    rng = random.Random(4)
    for _ in range(20):
        a = random_element(A, rng)
        assert multiply(A, A.unit, a) == a == multiply(A, a, A.unit)


def test_jordan_product_examples():
    rng = random.Random(1)
    a = random_element(M2, rng)
    assert jordan(M2, a, a) == vscale(2, multiply(M2, a, a))
    assert jordan(M2, M2.vec(E11=1), M2.vec(E22=1)) == zero_vector(4)
    assert jordan(M2, M2.unit, a) == vscale(2, a)


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_jordan_is_symmetric(seed):
    rng = random.Random(seed)
    a, b = random_element(M2, rng), random_element(M2, rng)
    assert jordan(M2, a, b) == jordan(M2, b, a)


def test_builder_shapes():
    assert M2.dim == 4 and M2.unit == M2.vec(E11=1, E22=1)
    assert T2.labels == ("E11", "E12", "E22")
    B = block_triangular([2, 1])
    assert B.dim == 7
    assert set(B.labels) == {"E11", "E12", "E13", "E21", "E22", "E23", "E33"}
    size, positions = matrix_units(B)
    assert size == 3 and positions[B.index("E23")] == (1, 2)
    assert matrix_units(remark_bimodule()[1].algebra) is not None


def test_verify_algebra_accepts_builders():
    for A in (M2, T2, matrix_algebra(3), block_triangular([1, 2])):
        assert verify_algebra(A).certified


def test_perturbed_structure_is_rejected():
    with pytest.raises(AxiomError) as info:
        Algebra(4, M2.labels, perturbed(M2, 1, 1, 1), M2.unit)
    assert info.value.witness is not None


def test_unchecked_construction_then_verify():
    bad = Algebra(4, M2.labels, perturbed(M2, 1, 1, 1), M2.unit, check=False)
    cert = verify_algebra(bad)
    assert cert.refuted
    assert cert.witness


def test_wrong_structure_shape():
    with pytest.raises(DimensionError):
        Algebra(2, ("a", "b"), [[[1, 0]]], (ONE, ZERO))


def test_remark_bimodule_actions():
    A, M = remark_bimodule()
    assert A == T2 and M.dim == 1
    assert verify_bimodule(M).certified
    a = A.vec(E11=2, E12=5, E22=Scalar("3+i"))
    gamma = (Scalar(7),)
    assert act(M, a, gamma, "left") == (Scalar("21+7 i"),)   # a22 * gamma
    assert act(M, a, gamma, "right") == (Scalar(14),)        # gamma * a11
    assert module_jordan(M, A.unit, gamma) == (Scalar(14),)


def test_broken_bimodule_is_rejected():
    A, M = remark_bimodule()
    with pytest.raises(AxiomError):
        # right action by a12 is not multiplicative: (m E12) E12 = m but E12 E12 = 0
        Bimodule(A, 1, M.left, [[[0], [1], [0]]])


def test_regular_and_ambient_bimodules():
    assert verify_bimodule(regular_bimodule(T2)).certified
    amb = ambient_matrix_bimodule(block_triangular([2, 1]))
    assert amb.dim == 9 and verify_bimodule(amb).certified


def test_bracket_examples():
    M = regular_bimodule(M2)
    rng = random.Random(2)
    m = random_element(M2, rng)
    assert bracket_amb(M, M2.unit, m, M2.unit) == vscale(2, m)
    assert bracket_amb(M, random_element(M2, rng), zero_vector(4), random_element(M2, rng)) == zero_vector(4)
    e11, e12, e22 = M2.vec(E11=1), M2.vec(E12=1), M2.vec(E22=1)
    assert bracket_amb(M, e11, e12, e22) == e12


def test_bracket_abm_symmetry():
    M = regular_bimodule(T2)
    rng = random.Random(3)
    a, b, m = (random_element(T2, rng) for _ in range(3))
    lhs = bracket_abm(M, a, b, m)
    expected = [x + y for x, y in zip(multiply(T2, multiply(T2, a, b), m), multiply(T2, multiply(T2, m, b), a))]
    assert lhs == tuple(expected)


def test_linear_map_vectorisation_roundtrip():
    D = LinearMap.from_function(T2, lambda a: (a[1],), 1)   # a -> a12
    assert D.to_vector() == (ZERO, ONE, ZERO)
    assert LinearMap.from_vector(D.to_vector(), 3, 1) == D
    assert D(T2.vec(E12=4)) == (Scalar(4),)


def test_bilinear_map_vectorisation_roundtrip():
    phi = BilinearMap.from_function(M2, lambda a, b: multiply(M2, a, b), 4)
    assert BilinearMap.from_vector(phi.to_vector(), 4, 4) == phi
    rng = random.Random(5)
    a, b = random_element(M2, rng), random_element(M2, rng)
    assert phi(a, b) == multiply(M2, a, b)
