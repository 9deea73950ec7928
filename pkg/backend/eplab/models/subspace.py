#!/usr/bin/env python3
"""
Subspace value types
Orthonormal-basis subspaces of C^n and the free/constrained coordinate form
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ..core.error_handling import DimensionMismatchError, InvalidConstraintSpecError
from .matrix import ComplexMatrix


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of C^n spanned by the orthonormal columns of ``basis`` (n×d, d may be 0)"""
    ambient_dim: int
    basis: ComplexMatrix

    def __post_init__(self) -> None:
        if self.basis.rows != self.ambient_dim:
            raise DimensionMismatchError(
                f"basis has {self.basis.rows} rows, ambient dimension is {self.ambient_dim}",
                shapes=(self.basis.shape,),
            )

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ComplexMatrix.zeros(n, 0))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, ComplexMatrix.identity(n))

    @property
    def dim(self) -> int:
        return self.basis.cols

    def projector(self) -> ComplexMatrix:
        """Orthogonal projector basis·basis*"""
        b = self.basis.data
        return ComplexMatrix(b @ b.conj().T)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"


@dataclass(frozen=True, eq=False)
class ConstraintSpec:
    """
    Coordinate presentation of a subspace W ⊆ C^n (indices are 0-based here)

    For the i-th constrained index c, x_c = Σ_k coefficients[i][k] · x_{free_indices[k]}.
    """
    ambient_dim: int
    free_indices: Tuple[int, ...]
    constrained_indices: Tuple[int, ...]
    coefficients: Tuple[Tuple[complex, ...], ...]

    def __post_init__(self) -> None:
        free = tuple(int(i) for i in self.free_indices)
        constrained = tuple(int(i) for i in self.constrained_indices)
        coefficients = tuple(tuple(complex(a) for a in row) for row in self.coefficients)
        object.__setattr__(self, "free_indices", free)
        object.__setattr__(self, "constrained_indices", constrained)
        object.__setattr__(self, "coefficients", coefficients)

        n = self.ambient_dim
        if n < 1:
            raise InvalidConstraintSpecError(f"ambient dimension must be positive, got {n}")
        for name, indices in (("free_indices", free), ("constrained_indices", constrained)):
            if any(b <= a for a, b in zip(indices, indices[1:])):
                raise InvalidConstraintSpecError(f"{name} must be strictly increasing")
        if sorted(free + constrained) != list(range(n)):
            raise InvalidConstraintSpecError("free and constrained indices must partition the coordinates")
        if len(coefficients) != len(constrained):
            raise InvalidConstraintSpecError("one coefficient vector is required per constrained index")
        for c, row in zip(constrained, coefficients):
            if len(row) != len(free):
                raise InvalidConstraintSpecError(
                    f"coefficient vector for index {c} has length {len(row)}, expected {len(free)}"
                )
            if not all(np.isfinite(a) for a in row):
                raise InvalidConstraintSpecError(f"coefficient vector for index {c} is not finite")

    @classmethod
    def build(cls, ambient_dim: int, free_indices: Sequence[int],
              coefficients: dict) -> "ConstraintSpec":
        """Spec from free indices and a {constrained index: vector} map"""
        constrained = tuple(sorted(coefficients))
        return cls(ambient_dim, tuple(free_indices), constrained,
                   tuple(tuple(coefficients[c]) for c in constrained))

    @property
    def dim(self) -> int:
        return len(self.free_indices)

    def coefficient_matrix(self) -> np.ndarray:
        """(n−d)×d array whose rows are the coefficient vectors"""
        return np.array(self.coefficients, dtype=np.complex128).reshape(
            len(self.constrained_indices), self.dim
        )

    def embedding(self) -> np.ndarray:
        """
        n×d matrix E with E[free_k, k] = 1 and E[c, k] = a^(c)_k, so that a
        vector with free coordinates y is E·y
        """
        e = np.zeros((self.ambient_dim, self.dim), dtype=np.complex128)
        e[list(self.free_indices), np.arange(self.dim)] = 1.0
        if self.constrained_indices:
            e[list(self.constrained_indices), :] = self.coefficient_matrix()
        return e
