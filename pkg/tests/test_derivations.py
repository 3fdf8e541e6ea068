import pytest

from zpdlab.algebra import (
    LinearMap, act, ambient_matrix_bimodule, block_triangular, matrix_algebra, matrix_unit_algebra,
    multiply, regular_bimodule, remark_bimodule, triangular_algebra,
)
from zpdlab.certificate import Outcome
from zpdlab.derivations import (
    ConditionTag, MapSpace, central_d1_space, check_condition_M, condition_space, definition_space,
    delta_transform, verify_lemma_f, verify_theorem_d1, verify_theorem_d2, verify_theorem_dd2,
)
from zpdlab.errors import HypothesisError
from zpdlab.idempotents import validate_ideal
from zpdlab.linalg import ONE, ZERO, Subspace, vadd, vsub

M2 = matrix_algebra(2)
T2 = triangular_algebra(2)
REMARK_A, REMARK_M = remark_bimodule()
D_REMARK = LinearMap.from_function(REMARK_A, lambda a: (a[REMARK_A.index("E12")],), 1)


def full(A):
    return validate_ideal(A, Subspace.full(A.dim))


def inner_derivation_oracle(A):
    """Span of ``a -> xa - ax`` over basis ``x``, computed without any solver."""
    M = regular_bimodule(A)
    maps = [LinearMap.from_function(A, lambda a, x=A.basis(i): vsub(multiply(A, x, a), multiply(A, a, x)), A.dim)
            for i in range(A.dim)]
    return MapSpace(A, M, Subspace.span([D.to_vector() for D in maps], A.dim * A.dim))


@pytest.mark.parametrize("A,dim", [(M2, 3), (matrix_algebra(3), 8), (T2, 2)], ids=["M2", "M3", "T2"])
def test_derivations_match_inner_oracle(A, dim):
    space = definition_space(A, regular_bimodule(A), ConditionTag.DERIVATION)
    assert space.dim == dim
    assert space.equals(inner_derivation_oracle(A))


def test_jordan_derivations_of_m2_are_derivations():
    M = regular_bimodule(M2)
    jd = definition_space(M2, M, ConditionTag.JORDAN_DERIVATION)
    assert jd.dim == 3
    assert jd.equals(definition_space(M2, M, ConditionTag.DERIVATION))


def test_remark_map_is_anti_derivation_only():
    anti = definition_space(REMARK_A, REMARK_M, ConditionTag.ANTI_DERIVATION)
    assert D_REMARK in anti
    assert D_REMARK not in definition_space(REMARK_A, REMARK_M, ConditionTag.DERIVATION)
    assert D_REMARK in condition_space(REMARK_A, REMARK_M, ConditionTag.D2)


def test_central_d1_on_commutative_algebra():
    diag = matrix_unit_algebra(2, [(0, 0), (1, 1)], "diagonal(2)")
    space = central_d1_space(diag, regular_bimodule(diag))
    assert space.space.is_full


def test_d1_space_on_m2():
    M = regular_bimodule(M2)
    d1 = condition_space(M2, M, ConditionTag.D1, seed=0, budget=200)
    inner = definition_space(M2, M, ConditionTag.GEN_DERIVATION).intersect(central_d1_space(M2, M))
    assert d1.dim == 4
    assert d1.equals(inner)


@pytest.mark.parametrize("tag", [ConditionTag.D1, ConditionTag.D2, ConditionTag.D3, ConditionTag.D4])
def test_zero_budget_leaves_everything(tag):
    assert condition_space(T2, regular_bimodule(T2), tag, budget=0).space.is_full


def test_condition_space_rejects_definition_tags():
    with pytest.raises(ValueError):
        condition_space(M2, regular_bimodule(M2), ConditionTag.DERIVATION)


def test_condition_m_examples():
    assert check_condition_M(M2, regular_bimodule(M2), full(M2)).outcome is Outcome.CERTIFIED
    assert check_condition_M(REMARK_A, REMARK_M, full(REMARK_A)).outcome is Outcome.CERTIFIED
    J = validate_ideal(T2, Subspace.span([T2.vec(E12=1)], 3))
    cert = check_condition_M(T2, regular_bimodule(T2), J)
    assert cert.outcome is Outcome.REFUTED
    m = cert.witness["m"]
    assert any(m)
    e12 = T2.vec(E12=1)
    M = regular_bimodule(T2)
    assert act(M, e12, act(M, e12, m, "left"), "right") == T2.vec()


def test_delta_transform():
    M = regular_bimodule(M2)
    inner = inner_derivation_oracle(M2).maps()[1]
    assert delta_transform(inner, M) == inner
    m0 = M2.vec(E12=2, E21=1)
    right_mult = LinearMap.from_function(M2, lambda a: multiply(M2, a, m0), 4)
    assert delta_transform(right_mult, M) == LinearMap(4, 4, [[ZERO] * 4] * 4)
    assert delta_transform(D_REMARK, REMARK_M) == D_REMARK


@pytest.mark.parametrize("A,dim", [(M2, 4), (T2, 3)], ids=["M2", "T2"])
def test_theorem_d1(A, dim):
    cert = verify_theorem_d1(A, regular_bimodule(A), full(A))
    assert cert.certified
    assert cert.details["dim_d1"] == cert.details["dim_gen_derivation_central"] == dim


def test_theorem_d1_needs_weak_condition():
    J = validate_ideal(T2, Subspace.span([T2.vec(E12=1)], 3))
    with pytest.raises(HypothesisError):
        verify_theorem_d1(T2, regular_bimodule(T2), J)


@pytest.mark.parametrize("A,M", [
    (M2, regular_bimodule(M2)),
    (REMARK_A, REMARK_M),
    (block_triangular([2, 1]), ambient_matrix_bimodule(block_triangular([2, 1]))),
], ids=["M2", "remark", "block"])
def test_theorems_d2_and_dd2(A, M):
    assert verify_theorem_d2(A, M, full(A)).certified
    assert verify_theorem_dd2(A, M, full(A)).certified


def test_dd2_lists_remark_witness():
    cert = verify_theorem_dd2(REMARK_A, REMARK_M, full(REMARK_A))
    witnesses = cert.witness["anti_derivations_not_derivations"]
    assert D_REMARK.to_vector() in witnesses
    assert cert.details["dim_anti_derivation"] == 2 and cert.details["dim_derivation"] == 1


def test_d2_requires_condition_m():
    J = validate_ideal(T2, Subspace.span([T2.vec(E12=1)], 3))
    with pytest.raises(HypothesisError):
        verify_theorem_d2(T2, regular_bimodule(T2), J)


@pytest.mark.parametrize("M", [regular_bimodule(M2), REMARK_M, regular_bimodule(T2)],
                         ids=["M2", "remark", "T2"])
def test_lemma_f_holds(M):
    cert = verify_lemma_f(M, samples=100, seed=1)
    assert cert.certified and cert.details["samples"] == 100


def _bad_amb(M, a, m, b):
    # drops the b m a half of [a, m, b]
    return act(M, b, act(M, a, m, "left"), "right")


def _bad_abm(M, a, b, m):
    # uses m b a where b a m belongs
    A = M.algebra
    return vadd(act(M, multiply(A, a, b), m, "left"), act(M, multiply(A, a, b), m, "right"))


@pytest.mark.parametrize("kwargs", [{"amb": _bad_amb}, {"abm": _bad_abm}], ids=["amb", "abm"])
def test_lemma_f_catches_corrupted_bracket(kwargs):
    cert = verify_lemma_f(regular_bimodule(M2), samples=50, seed=0, **kwargs)
    assert cert.outcome is Outcome.REFUTED
    assert "identity" in cert.witness


def test_lemma_f_rejects_zero_samples():
    with pytest.raises(ValueError):
        verify_lemma_f(REMARK_M, samples=0)


def test_unit_identity_map_is_not_a_derivation():
    identity = LinearMap.from_function(M2, lambda a: a, 4)
    assert identity not in definition_space(M2, regular_bimodule(M2), ConditionTag.DERIVATION)
    assert identity.column(0)[0] == ONE
