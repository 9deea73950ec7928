#!/usr/bin/env python3
"""
Tests for the dense linear algebra kernel: adjoint, products, equality,
SVD backends and numerical rank
"""

import numpy as np
import pytest

from eplab.core.error_handling import (
    DimensionMismatchError,
    NonFiniteEntryError,
    NonSquareError,
    SvdConvergenceError,
)
from eplab.models.matrix import ComplexMatrix, Tolerance
from eplab.services.core_linalg import (
    adjoint,
    approx_eq,
    equality_residual,
    identity,
    is_hermitian,
    matmul,
    rank,
    require_same_square,
    require_square,
    svd,
    svd_quality,
    truncated_product,
    zeros,
)
from eplab.services.generators import complex_gaussian, haar_unitary

from conftest import cm


# ================================
# Matrix value type
# ================================

def test_adjoint_conjugates_and_transposes():
    m = cm([[1, 2j], [3, 4 - 1j]])
    expected = np.array([[1, 3], [-2j, 4 + 1j]])
    np.testing.assert_allclose(adjoint(m).data, expected)


def test_adjoint_is_an_involution(rng):
    m = ComplexMatrix(complex_gaussian(rng, 3, 5))
    assert adjoint(m).shape == (5, 3)
    np.testing.assert_array_equal(adjoint(adjoint(m)).data, m.data)


def test_matmul_rejects_incompatible_shapes():
    with pytest.raises(DimensionMismatchError):
        matmul(zeros(2, 3), zeros(2, 3))


def test_matrix_rejects_non_finite_entries():
    with pytest.raises(NonFiniteEntryError):
        ComplexMatrix(np.array([[1.0, np.nan]]))
    with pytest.raises(NonFiniteEntryError):
        ComplexMatrix(np.array([[np.inf + 0j]]))


def test_matrix_data_is_read_only():
    m = identity(2)
    with pytest.raises(ValueError):
        m.data[0, 0] = 5


def test_require_square():
    assert require_square(identity(4)) == 4
    with pytest.raises(NonSquareError):
        require_square(zeros(2, 3), "T")


def test_require_same_square_rejects_different_sizes():
    assert require_same_square(("A", identity(3)), ("T", identity(3))) == 3
    with pytest.raises(DimensionMismatchError):
        require_same_square(("A", identity(2)), ("T", identity(3)))


# ================================
# Hybrid equality
# ================================

def test_approx_eq_absolute_near_zero():
    tol = Tolerance(eq_tol=1e-9)
    assert approx_eq(zeros(2, 2), ComplexMatrix(np.full((2, 2), 1e-11)), tol)
    assert not approx_eq(zeros(2, 2), ComplexMatrix(np.full((2, 2), 1e-6)), tol)


def test_approx_eq_relative_for_large_entries():
    tol = Tolerance(eq_tol=1e-9)
    big = 1e6 * np.eye(2)
    perturbed = big.copy()
    perturbed[0, 1] = 1e-4
    assert approx_eq(ComplexMatrix(big), ComplexMatrix(perturbed), tol)
    perturbed[0, 1] = 1e-1
    assert not approx_eq(ComplexMatrix(big), ComplexMatrix(perturbed), tol)


def test_equality_residual_reports_scale():
    residual, scale = equality_residual(cm([[3, 0], [0, 4]]), zeros(2, 2))
    assert residual == pytest.approx(5.0)
    assert scale == pytest.approx(5.0)


def test_equality_residual_rejects_shape_mismatch():
    with pytest.raises(DimensionMismatchError):
        equality_residual(zeros(2, 2), zeros(2, 3))


def test_tolerance_rejects_non_positive_eq_tol():
    with pytest.raises(ValueError):
        Tolerance(eq_tol=0.0)
    with pytest.raises(ValueError):
        Tolerance(rank_tol_factor=-1.0)


# ================================
# SVD
# ================================

def test_svd_of_diagonal():
    result = svd(ComplexMatrix.diag([1, 3]))
    np.testing.assert_allclose(result.singular_values, [3.0, 1.0])
    assert result.numerical_rank(Tolerance()) == 2


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
@pytest.mark.parametrize("shape", [(4, 4), (6, 3), (3, 6), (1, 5)])
def test_svd_invariants(method, shape, rng):
    m = ComplexMatrix(complex_gaussian(rng, *shape))
    result = svd(m, method=method)
    recon, left, right = svd_quality(m, result)
    scale = max(1.0, float(np.linalg.norm(m.data)))
    assert recon <= 1e-12 * scale
    assert left <= 1e-12
    assert right <= 1e-12
    assert result.left.shape == (shape[0], shape[0])
    assert result.right.shape == (shape[1], shape[1])
    assert np.all(np.diff(result.singular_values) <= 0)


def test_jacobi_agrees_with_lapack(rng):
    m = ComplexMatrix(complex_gaussian(rng, 7, 5))
    lapack = svd(m, method="lapack").singular_values
    jacobi = svd(m, method="jacobi").singular_values
    np.testing.assert_allclose(jacobi, lapack, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
def test_svd_phase_convention(method, rng):
    m = ComplexMatrix(complex_gaussian(rng, 5, 5))
    w = svd(m, method=method).left.data
    for j in range(w.shape[1]):
        col = w[:, j]
        lead = col[np.argmax(np.abs(col))]
        assert abs(lead.imag) <= 1e-14
        assert lead.real > 0


def test_jacobi_handles_rank_deficiency(rank_one):
    result = svd(rank_one, method="jacobi")
    np.testing.assert_allclose(result.singular_values, [np.sqrt(10.0), 0.0], atol=1e-14)
    assert svd_quality(rank_one, result)[0] <= 1e-13


def test_jacobi_sweep_budget_raises(rng):
    m = ComplexMatrix(complex_gaussian(rng, 8, 8))
    with pytest.raises(SvdConvergenceError) as info:
        svd(m, method="jacobi", max_sweeps=1)
    assert info.value.iterations == 1


def test_jacobi_reports_sweeps(rng):
    result = svd(ComplexMatrix(complex_gaussian(rng, 4, 4)), method="jacobi")
    assert result.iterations is not None and result.iterations >= 1
    assert svd(identity(3), method="lapack").iterations is None


def test_svd_unknown_method():
    with pytest.raises(ValueError):
        svd(identity(2), method="qr")


# ================================
# Numerical rank
# ================================

def test_rank_examples(rank_one):
    assert rank(rank_one) == 1
    assert rank(zeros(3, 3)) == 0
    assert rank(identity(4)) == 4
    assert rank(cm([[1, 2, 3]])) == 1


def test_rank_respects_cutoff_factor():
    m = ComplexMatrix.diag([1.0, 1e-8])
    assert rank(m, Tolerance()) == 2
    assert rank(m, Tolerance(rank_tol_factor=1e-6)) == 1


def test_is_hermitian():
    assert is_hermitian(cm([[2, 1 - 1j], [1 + 1j, 3]]))
    assert not is_hermitian(cm([[0, 1], [0, 0]]))
    assert not is_hermitian(cm([[1, 2, 3]]))


# ================================
# Products measured against their operands
# ================================

def _rotated_projectors(seed: int, n: int = 3):
    q = haar_unitary(n, np.random.default_rng(seed))
    first = np.zeros(n)
    first[0] = 1.0
    second = np.zeros(n)
    second[1] = 1.0
    return ComplexMatrix((q * first) @ q.conj().T), ComplexMatrix((q * second) @ q.conj().T)


@pytest.mark.parametrize("seed", [0, 1, 7, 42])
def test_cancelling_product_truncates_to_zero(seed):
    s, t = _rotated_projectors(seed)
    raw = s @ t
    assert np.linalg.norm(raw.data) < 1e-14
    product = truncated_product(s, t)
    assert np.count_nonzero(product.data) == 0
    assert rank(product) == 0


def test_genuine_product_is_unchanged(rng):
    a = ComplexMatrix(complex_gaussian(rng, 4, 4))
    b = ComplexMatrix(complex_gaussian(rng, 4, 4))
    np.testing.assert_array_equal(truncated_product(a, b).data, (a @ b).data)


def test_truncated_product_keeps_the_surviving_rank():
    s = ComplexMatrix.diag([1, 1, 0])
    t = ComplexMatrix.diag([0, 2, 3])
    product = truncated_product(s, t)
    np.testing.assert_allclose(product.data, np.diag([0, 2, 0]), atol=1e-15)
    assert rank(product) == 1
