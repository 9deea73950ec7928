#!/usr/bin/env python3
"""
Matrix value types
Immutable complex matrix, SVD factors and equality/rank tolerances
"""

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.error_handling import NonFiniteEntryError, DimensionMismatchError

MACHINE_EPS = float(np.finfo(np.float64).eps)

Scalar = Union[int, float, complex]


@dataclass(frozen=True, eq=False)
class ComplexMatrix:
    """
    Dense m×n complex matrix backed by a read-only complex128 array

    Zero extents are allowed so that an n×0 orthonormal basis (the zero
    subspace) is representable; documents read from disk are always ≥ 1×1.
    """
    data: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.data, dtype=np.complex128, copy=True)
        if arr.ndim != 2:
            raise DimensionMismatchError(f"matrix must be two-dimensional, got ndim={arr.ndim}",
                                         shapes=(arr.shape,))
        if not np.all(np.isfinite(arr)):
            raise NonFiniteEntryError()
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "ComplexMatrix":
        return cls(np.array(rows, dtype=np.complex128))

    @classmethod
    def identity(cls, n: int) -> "ComplexMatrix":
        return cls(np.eye(n, dtype=np.complex128))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ComplexMatrix":
        return cls(np.zeros((rows, cols), dtype=np.complex128))

    @classmethod
    def diag(cls, values: Iterable[Scalar]) -> "ComplexMatrix":
        return cls(np.diag(np.asarray(list(values), dtype=np.complex128)))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def H(self) -> "ComplexMatrix":
        """Conjugate transpose"""
        return ComplexMatrix(self.data.conj().T)

    def __matmul__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}",
                shapes=(self.shape, other.shape),
            )
        return ComplexMatrix(self.data @ other.data)

    def __repr__(self) -> str:
        return f"ComplexMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class Tolerance:
    """
    eq_tol: hybrid threshold, ‖A−B‖_F ≤ eq_tol·max(1, ‖A‖_F, ‖B‖_F)
    rank_tol_factor: singular values above factor·σ_max count toward rank;
        None selects max(m, n)·machine epsilon for each matrix
    """
    eq_tol: float = 1e-9
    rank_tol_factor: Optional[float] = None

    def __post_init__(self) -> None:
        if not self.eq_tol > 0:
            raise ValueError("eq_tol must be strictly positive")
        if self.rank_tol_factor is not None and not self.rank_tol_factor > 0:
            raise ValueError("rank_tol_factor must be strictly positive")

    def rank_factor(self, shape: Tuple[int, int]) -> float:
        if self.rank_tol_factor is not None:
            return self.rank_tol_factor
        return max(max(shape), 1) * MACHINE_EPS

    def rank_cutoff(self, shape: Tuple[int, int], sigma_max: float) -> float:
        return self.rank_factor(shape) * sigma_max


DEFAULT_TOLERANCE = Tolerance()


@dataclass(frozen=True, eq=False)
class SvdResult:
    """M = left · diag(singular_values) · right*"""
    left: ComplexMatrix
    singular_values: np.ndarray
    right: ComplexMatrix
    # LAPACK does not expose its iteration count
    iterations: Optional[int] = None

    def __post_init__(self) -> None:
        s = np.array(self.singular_values, dtype=np.float64, copy=True)
        s.setflags(write=False)
        object.__setattr__(self, "singular_values", s)

    @property
    def sigma_max(self) -> float:
        return float(self.singular_values[0]) if self.singular_values.size else 0.0

    def numerical_rank(self, tol: Tolerance) -> int:
        shape = (self.left.rows, self.right.rows)
        cutoff = tol.rank_cutoff(shape, self.sigma_max)
        return int(np.count_nonzero(self.singular_values > cutoff))

    def reconstruct(self) -> ComplexMatrix:
        m, n = self.left.rows, self.right.rows
        sigma = np.zeros((m, n), dtype=np.complex128)
        k = self.singular_values.size
        sigma[np.arange(k), np.arange(k)] = self.singular_values
        return ComplexMatrix(self.left.data @ sigma @ self.right.data.conj().T)
