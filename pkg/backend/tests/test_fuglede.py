#!/usr/bin/env python3
"""
Tests for the Fuglede-Putnam type checkers, polar decomposition, the
product criteria and the rule registry
"""

import numpy as np
import pytest

from eplab.core.error_handling import (
    DimensionMismatchError,
    MissingOperandError,
    UnknownRuleError,
    UnknownVariantError,
)
from eplab.models.matrix import ComplexMatrix
from eplab.services.core_linalg import approx_eq, identity
from eplab.services.ep import random_commuting_pair
from eplab.services.generators import haar_unitary
from eplab.services.fuglede import (
    PRODUCT_COMMUTATION,
    PRODUCT_RANGE_NULL,
    RULES,
    AdjointVariant,
    check_fuglede_adjoint,
    check_fuglede_classic,
    check_fuglede_mp,
    check_polar_corollary,
    check_product_ep,
    check_putnam_classic,
    check_putnam_mp,
    check_two_sided,
    polar_decompose,
    reverse_order_law,
    run_rule,
)

from conftest import cm


# ================================
# Classic and Moore-Penrose forms
# ================================

def test_fuglede_classic_diagonal():
    verdict = check_fuglede_classic(ComplexMatrix.diag([1, 5]), ComplexMatrix.diag([1, 2]))
    assert verdict.hypotheses_hold and verdict.conclusions_hold and verdict.consistent


def test_fuglede_classic_non_normal_hypothesis_is_reported():
    n = cm([[1, 1], [0, 1]])
    verdict = check_fuglede_classic(n, n)
    assert not verdict.evidence("N normal").holds
    assert verdict.evidence("AN=NA").holds
    assert verdict.consistent


def test_fuglede_mp_singular_ep():
    verdict = check_fuglede_mp(ComplexMatrix.diag([3, 7]), ComplexMatrix.diag([1, 0]))
    assert verdict.hypotheses_hold and verdict.conclusions_hold


def test_fuglede_mp_random_commuting_pair(suite_tol):
    t, a = random_commuting_pair(5, 3, seed=21)
    verdict = check_fuglede_mp(a, t, suite_tol)
    assert verdict.hypotheses_hold
    assert verdict.conclusions_hold


def test_fuglede_mp_non_ep_commuting(rank_one):
    verdict = check_fuglede_mp(rank_one, rank_one)
    assert not verdict.evidence("T EP").holds
    assert verdict.evidence("AT=TA").holds
    assert not verdict.evidence("AT†=T†A").holds
    # the hypotheses are not all true, so nothing is violated
    assert verdict.consistent
    assert verdict.evidence("AT†=T†A").residual == pytest.approx(np.sqrt(0.2), rel=1e-9)


def test_putnam_classic_zero_operators():
    zero = ComplexMatrix.zeros(3, 3)
    verdict = check_putnam_classic(cm([[1, 2, 3], [4, 5, 6], [7, 8, 9]]), zero, zero)
    assert verdict.hypotheses_hold and verdict.conclusions_hold


def test_putnam_mp_intertwined_projections():
    t, s = ComplexMatrix.diag([1, 0]), ComplexMatrix.diag([0, 1])
    a = cm([[0, 0], [1, 0]])
    verdict = check_putnam_mp(a, t, s)
    assert verdict.hypotheses_hold and verdict.conclusions_hold


def test_two_sided_without_s():
    t = ComplexMatrix.diag([1, 0])
    a = ComplexMatrix.diag([2, 3])
    verdict = check_two_sided(a, a, t)
    assert verdict.theorem_id == "two-sided"
    assert verdict.hypotheses_hold and verdict.conclusions_hold


def test_two_sided_with_s():
    t, s = ComplexMatrix.diag([1, 0]), ComplexMatrix.diag([0, 1])
    a = cm([[0, 0], [1, 0]])
    verdict = check_two_sided(a, a, t, s)
    assert verdict.theorem_id == "two-sided-pair"
    assert verdict.hypotheses_hold and verdict.conclusions_hold


def test_checkers_reject_mixed_sizes():
    with pytest.raises(DimensionMismatchError):
        check_fuglede_mp(identity(2), identity(3))


# ================================
# Adjoint variants
# ================================

def test_adjoint_variant_parse():
    assert AdjointVariant.parse("star_product") is AdjointVariant.STAR_PRODUCT
    assert AdjointVariant.parse(AdjointVariant.MP_STAR) is AdjointVariant.MP_STAR
    with pytest.raises(UnknownVariantError):
        AdjointVariant.parse("foo")


@pytest.mark.parametrize("variant,extra", [
    ("star_product", "AT*T=T*TA"),
    ("mp_star", "AT†T*=T†T*A"),
])
def test_fuglede_adjoint_variants_name_their_condition(variant, extra):
    t = ComplexMatrix.diag([2j, 0])
    a = ComplexMatrix.diag([1, 4])
    verdict = check_fuglede_adjoint(a, t, variant)
    assert extra in verdict.hypotheses
    assert verdict.theorem_id == f"fuglede-adjoint:{variant}"
    assert verdict.hypotheses_hold and verdict.conclusions_hold


# ================================
# Polar decomposition and products
# ================================

def test_polar_of_nilpotent():
    u, p = polar_decompose(cm([[0, 2], [0, 0]]))
    np.testing.assert_allclose(u.data, [[0, 1], [1, 0]], atol=1e-15)
    np.testing.assert_allclose(p.data, np.diag([0, 2]), atol=1e-15)


def test_polar_of_unitary_and_positive():
    s = cm([[0, 1j], [1j, 0]])
    u, p = polar_decompose(s)
    np.testing.assert_allclose(u.data, s.data, atol=1e-14)
    np.testing.assert_allclose(p.data, np.eye(2), atol=1e-14)

    u, p = polar_decompose(ComplexMatrix.diag([2, 1]))
    np.testing.assert_allclose(u.data, np.eye(2), atol=1e-14)
    np.testing.assert_allclose(p.data, np.diag([2, 1]), atol=1e-14)


def test_polar_factors_reconstruct(rng):
    s = ComplexMatrix(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
    u, p = polar_decompose(s)
    assert approx_eq(u @ p, s)
    assert approx_eq(u.H @ u, identity(4))
    assert np.min(np.linalg.eigvalsh(p.data)) > -1e-12


def test_reverse_order_law_for_invertibles():
    s, t = cm([[1, 1], [0, 1]]), cm([[2, 0], [1, 1]])
    assert reverse_order_law(s, t).holds


def test_product_ep_commuting_diagonal():
    s = t = ComplexMatrix.diag([1, 0])
    verdict = check_product_ep(s, t)
    assert verdict.hypotheses_hold
    assert verdict.conclusions_hold
    assert all(e.holds for e in verdict.observations.values())


def test_product_ep_not_ep_pair():
    verdict = check_product_ep(cm([[1, 1], [1, 1]]), ComplexMatrix.diag([0, 1]))
    assert not verdict.evidence("ST EP").holds
    assert not verdict.evidence("R(ST)=R(S)∩R(T)").holds
    assert verdict.evidence(PRODUCT_RANGE_NULL).holds
    assert verdict.evidence(PRODUCT_COMMUTATION).holds
    assert verdict.consistent


def test_polar_corollary_identity():
    verdict = check_polar_corollary(identity(3), identity(3))
    assert verdict.hypotheses_hold and verdict.conclusions_hold


def test_polar_corollary_does_not_assume_ep_operands():
    verdict = check_polar_corollary(cm([[0, 1], [0, 0]]), identity(2))
    assert set(verdict.hypotheses) == {"(ST)†=T†S†", "TU EP", "PTU=TUP"}
    assert not verdict.observations["S EP"].holds
    assert verdict.observations["T EP"].holds
    assert verdict.hypotheses["(ST)†=T†S†"].holds
    assert verdict.hypotheses["TU EP"].holds
    assert not verdict.hypotheses["PTU=TUP"].holds
    assert verdict.consistent


@pytest.mark.parametrize("seed", [0, 1, 7, 42])
def test_product_of_orthogonal_rank_one_projectors(seed):
    q = haar_unitary(3, np.random.default_rng(seed))
    s = ComplexMatrix(np.outer(q[:, 0], q[:, 0].conj()))
    t = ComplexMatrix(np.outer(q[:, 1], q[:, 1].conj()))
    verdict = check_product_ep(s, t)
    assert verdict.hypotheses_hold
    assert verdict.conclusions_hold
    failed = [name for name, e in verdict.observations.items() if not e.holds]
    assert failed == []
    assert verdict.hypotheses["(ST)†=T†S†"].residual < 1e-12


@pytest.mark.parametrize("seed", [0, 1, 7, 42])
def test_polar_corollary_on_orthogonal_projectors(seed):
    q = haar_unitary(3, np.random.default_rng(seed))
    s = ComplexMatrix(np.outer(q[:, 0], q[:, 0].conj()))
    t = ComplexMatrix(np.outer(q[:, 1], q[:, 1].conj()))
    verdict = check_polar_corollary(s, t)
    assert verdict.conclusions_hold
    assert verdict.consistent


# ================================
# Registry
# ================================

def test_registry_covers_every_rule():
    assert set(RULES) == {
        "fuglede", "fuglede-mp", "fuglede-adjoint", "fuglede-adjoint-star", "fuglede-adjoint-mp",
        "putnam", "putnam-mp", "putnam-adjoint", "putnam-adjoint-star", "putnam-adjoint-mp",
        "squares", "two-sided", "product-ep", "polar-corollary", "normal-ep",
    }


def test_run_rule_dispatches():
    operands = {"A": ComplexMatrix.diag([1, 5]), "T": ComplexMatrix.diag([1, 2])}
    assert run_rule("fuglede", operands).theorem_id == "fuglede"
    assert run_rule("fuglede-mp", operands).theorem_id == "fuglede-mp"
    verdict = run_rule("fuglede-adjoint", operands, variant="mp_star")
    assert verdict.theorem_id == "fuglede-adjoint:mp_star"


def test_run_rule_optional_operand():
    t = ComplexMatrix.diag([1, 0])
    a = ComplexMatrix.diag([2, 3])
    assert run_rule("two-sided", {"A": a, "B": a, "T": t}).theorem_id == "two-sided"
    assert run_rule("two-sided", {"A": a, "B": a, "T": t, "S": t}).theorem_id == "two-sided-pair"


def test_run_rule_errors():
    operands = {"A": identity(2), "T": identity(2)}
    with pytest.raises(UnknownRuleError):
        run_rule("fuglede-lite", operands)
    with pytest.raises(MissingOperandError) as info:
        run_rule("putnam-mp", operands)
    assert info.value.operand == "S"
    with pytest.raises(UnknownVariantError):
        run_rule("fuglede-adjoint", operands)
    with pytest.raises(UnknownVariantError):
        run_rule("putnam-adjoint", {**operands, "S": identity(2)}, variant="star")
