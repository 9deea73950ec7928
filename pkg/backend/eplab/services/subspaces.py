#!/usr/bin/env python3
"""
Subspace arithmetic over C^n
Column spaces, null spaces, complements, sums, intersections, projector
equality and the free/constrained coordinate form of a subspace
"""

from typing import NamedTuple, Optional, Sequence

import numpy as np

from ..core.error_handling import DegenerateBasisError, DimensionMismatchError
from ..models.matrix import DEFAULT_TOLERANCE, ComplexMatrix, SvdResult, Tolerance
from ..models.subspace import ConstraintSpec, Subspace
from .core_linalg import svd


def from_columns(m: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> Subspace:
    """Orthonormal basis of R(M): the leading rank(M) left singular vectors"""
    if m.cols == 0:
        return Subspace.zero(m.rows)
    result = svd(m)
    r = result.numerical_rank(tol)
    return Subspace(m.rows, ComplexMatrix(result.left.data[:, :r]))


def nullspace(m: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> Subspace:
    """N(M): right singular vectors past the numerical rank"""
    result = svd(m)
    r = result.numerical_rank(tol)
    return Subspace(m.cols, ComplexMatrix(result.right.data[:, r:]))


class FundamentalSubspaces(NamedTuple):
    column_space: Subspace
    row_space: Subspace
    null_space: Subspace
    left_null_space: Subspace


def fundamental_subspaces(m: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE,
                          factors: Optional[SvdResult] = None) -> FundamentalSubspaces:
    """R(M), R(M*), N(M) and N(M*) from one SVD M = W·Σ·V*"""
    result = svd(m) if factors is None else factors
    r = result.numerical_rank(tol)
    w, v = result.left.data, result.right.data
    return FundamentalSubspaces(
        column_space=Subspace(m.rows, ComplexMatrix(w[:, :r])),
        row_space=Subspace(m.cols, ComplexMatrix(v[:, :r])),
        null_space=Subspace(m.cols, ComplexMatrix(v[:, r:])),
        left_null_space=Subspace(m.rows, ComplexMatrix(w[:, r:])),
    )


def _same_ambient(s1: Subspace, s2: Subspace) -> int:
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionMismatchError(
            f"ambient dimensions differ: {s1.ambient_dim} vs {s2.ambient_dim}",
            shapes=(s1.ambient_dim, s2.ambient_dim),
        )
    return s1.ambient_dim


def complement(s: Subspace) -> Subspace:
    """Orthogonal complement, dimension n − d"""
    n, d = s.ambient_dim, s.dim
    if d == 0:
        return Subspace.full(n)
    if d == n:
        return Subspace.zero(n)
    # basis columns are orthonormal, so the rank is exactly d
    left = svd(s.basis).left.data
    return Subspace(n, ComplexMatrix(left[:, d:]))


def sum(s1: Subspace, s2: Subspace, tol: Tolerance = DEFAULT_TOLERANCE) -> Subspace:
    """S1 + S2 via the column space of the concatenated bases"""
    n = _same_ambient(s1, s2)
    stacked = np.hstack([s1.basis.data, s2.basis.data])
    return from_columns(ComplexMatrix(stacked.reshape(n, -1)), tol)


def intersect(s1: Subspace, s2: Subspace, tol: Tolerance = DEFAULT_TOLERANCE) -> Subspace:
    """S1 ∩ S2 = (S1⊥ + S2⊥)⊥"""
    _same_ambient(s1, s2)
    return complement(sum(complement(s1), complement(s2), tol))


def projector_distance(s1: Subspace, s2: Subspace) -> float:
    """‖P1 − P2‖_F"""
    _same_ambient(s1, s2)
    return float(np.linalg.norm(s1.projector().data - s2.projector().data))


def equal(s1: Subspace, s2: Subspace, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Projector distance within eq_tol"""
    return projector_distance(s1, s2) <= tol.eq_tol


def _pivot_columns(rows: np.ndarray, cutoff: float) -> list:
    """Pivot columns of the row-reduced form, partial pivoting, left to right"""
    work = rows.copy()
    d, n = work.shape
    pivots = []
    k = 0
    for j in range(n):
        if k == d:
            break
        i = k + int(np.argmax(np.abs(work[k:, j])))
        if abs(work[i, j]) <= cutoff:
            continue
        work[[k, i]] = work[[i, k]]
        work[k] = work[k] / work[k, j]
        for other in range(d):
            if other != k:
                work[other] = work[other] - work[other, j] * work[k]
        pivots.append(j)
        k += 1
    return pivots


def to_constraint_form(s: Subspace, tol: Tolerance = DEFAULT_TOLERANCE,
                       free_indices: Optional[Sequence[int]] = None) -> ConstraintSpec:
    """
    Coordinate presentation of S (0-based indices)

    Free indices are the pivot columns of the row-reduced basisᵀ unless
    ``free_indices`` fixes them; in both cases the basis restricted to the
    free coordinates must be invertible.
    """
    n, d = s.ambient_dim, s.dim
    if d == 0:
        raise DegenerateBasisError("the zero subspace has no free coordinates")
    rows = s.basis.data.T.copy()

    if free_indices is None:
        cutoff = tol.eq_tol * float(np.max(np.abs(rows)))
        free = _pivot_columns(rows, cutoff)
        if len(free) < d:
            raise DegenerateBasisError(
                f"pivoting found {len(free)} independent coordinates, need {d}"
            )
    else:
        free = sorted(int(i) for i in free_indices)
        if len(free) != d or len(set(free)) != d or free[0] < 0 or free[-1] >= n:
            raise DegenerateBasisError(f"expected {d} distinct free indices within 0..{n - 1}")

    block = rows[:, free]
    if svd(ComplexMatrix(block)).numerical_rank(tol) < d:
        raise DegenerateBasisError(f"coordinates {free} are not independent on this subspace")
    # R = B_F⁻¹ B has identity on the free columns; its other columns are the coefficients
    reduced = np.linalg.solve(block, rows)
    constrained = [c for c in range(n) if c not in free]
    coefficients = tuple(tuple(complex(v) for v in reduced[:, c]) for c in constrained)
    return ConstraintSpec(n, tuple(free), tuple(constrained), coefficients)


def from_constraint_form(spec: ConstraintSpec, tol: Tolerance = DEFAULT_TOLERANCE) -> Subspace:
    """Subspace spanned by the embedded free-coordinate directions"""
    if spec.dim == 0:
        return Subspace.zero(spec.ambient_dim)
    return from_columns(ComplexMatrix(spec.embedding()), tol)
