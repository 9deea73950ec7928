#!/usr/bin/env python3
"""
Tests for subspace arithmetic and the coordinate presentation of subspaces
"""

import numpy as np
import pytest

from eplab.core.error_handling import DegenerateBasisError, DimensionMismatchError
from eplab.models.matrix import ComplexMatrix
from eplab.models.subspace import ConstraintSpec, Subspace
from eplab.services import subspaces
from eplab.services.core_linalg import identity, zeros

from conftest import cm


def span(*vectors) -> Subspace:
    return subspaces.from_columns(ComplexMatrix(np.array(vectors, dtype=np.complex128).T))


E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


# ================================
# Construction
# ================================

def test_from_columns_dimension(rank_one):
    assert subspaces.from_columns(rank_one).dim == 1
    assert subspaces.from_columns(zeros(3, 2)).dim == 0
    assert subspaces.from_columns(identity(3)).dim == 3


def test_from_columns_basis_is_orthonormal(rng):
    s = subspaces.from_columns(ComplexMatrix(rng.standard_normal((5, 3))))
    b = s.basis.data
    np.testing.assert_allclose(b.conj().T @ b, np.eye(3), atol=1e-13)


def test_nullspace_of_ep_example(ep_not_normal):
    kernel = subspaces.nullspace(ep_not_normal)
    kernel_adj = subspaces.nullspace(ep_not_normal.H)
    expected = span((1, -1, -1))
    assert kernel.dim == 1
    assert subspaces.equal(kernel, expected)
    assert subspaces.equal(kernel_adj, expected)


def test_nullspace_of_invertible_is_zero():
    assert subspaces.nullspace(identity(3)).dim == 0


def test_subspace_rejects_wrong_basis_rows():
    with pytest.raises(DimensionMismatchError):
        Subspace(3, identity(2))


# ================================
# Lattice operations
# ================================

def test_complement():
    w = span(E1)
    c = subspaces.complement(w)
    assert c.dim == 2
    assert subspaces.equal(c, span(E2, E3))
    assert subspaces.complement(Subspace.zero(3)).dim == 3
    assert subspaces.complement(Subspace.full(3)).dim == 0


def test_sum_and_intersection():
    a = span(E1, E2)
    b = span(E2, E3)
    assert subspaces.equal(subspaces.intersect(a, b), span(E2))
    assert subspaces.sum(a, b).dim == 3


def test_intersection_of_transversal_lines_is_zero():
    assert subspaces.intersect(span(E1), span((1, 1, 0))).dim == 0


def test_sum_with_zero_subspace():
    a = span(E1, E3)
    assert subspaces.equal(subspaces.sum(a, Subspace.zero(3)), a)


def test_ambient_mismatch():
    with pytest.raises(DimensionMismatchError):
        subspaces.sum(Subspace.full(2), Subspace.full(3))
    with pytest.raises(DimensionMismatchError):
        subspaces.projector_distance(Subspace.full(2), Subspace.zero(3))


def test_projector_distance_between_orthogonal_lines():
    assert subspaces.projector_distance(span(E1), span(E2)) == pytest.approx(np.sqrt(2.0))


def test_equal_is_basis_independent():
    assert subspaces.equal(span(E1, E2), span((1, 1, 0), (1, -1j, 0)))


# ================================
# Coordinate presentation
# ================================

def test_constraint_form_with_pivoting():
    w = span((1, 1, 0), (0, 1, 1))
    spec = subspaces.to_constraint_form(w)
    assert spec.free_indices == (0, 1)
    assert spec.constrained_indices == (2,)
    np.testing.assert_allclose(spec.coefficients[0], (-1, 1), atol=1e-12)


def test_constraint_form_with_chosen_free_indices():
    w = span((1, 1, 0), (0, 1, 1))
    spec = subspaces.to_constraint_form(w, free_indices=(0, 2))
    assert spec.constrained_indices == (1,)
    np.testing.assert_allclose(spec.coefficients[0], (1, 1), atol=1e-12)


def test_constraint_form_roundtrip():
    w = span((1, 2j, 0, 1), (0, 1, 1, -1))
    back = subspaces.from_constraint_form(subspaces.to_constraint_form(w))
    assert subspaces.equal(w, back)


def test_constraint_form_of_zero_subspace_raises():
    with pytest.raises(DegenerateBasisError):
        subspaces.to_constraint_form(Subspace.zero(3))


def test_constraint_form_rejects_dependent_free_coordinates():
    with pytest.raises(DegenerateBasisError):
        subspaces.to_constraint_form(span((1, 1, 0)), free_indices=(2,))


def test_from_constraint_form_prescribed_range(prescribed_range_spec):
    w = subspaces.from_constraint_form(prescribed_range_spec)
    assert w.dim == 2
    assert subspaces.equal(w, span((1, 1, 0), (0, 1, 1)))


def test_constraint_spec_validation():
    from eplab.core.error_handling import InvalidConstraintSpecError

    with pytest.raises(InvalidConstraintSpecError):
        ConstraintSpec(3, (0, 1), (1,), ((1, 1),))
    with pytest.raises(InvalidConstraintSpecError):
        ConstraintSpec(3, (0, 2), (1,), ((1,),))
    with pytest.raises(InvalidConstraintSpecError):
        ConstraintSpec(3, (2, 0), (1,), ((1, 1),))


def test_embedding_matrix(prescribed_range_spec):
    np.testing.assert_array_equal(
        prescribed_range_spec.embedding(),
        cm([[1, 0], [1, 1], [0, 1]]).data,
    )
