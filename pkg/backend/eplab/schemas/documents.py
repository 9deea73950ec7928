#!/usr/bin/env python3
"""
Document Schemas
Pydantic models for the JSON files read and written by the command line

Defines schemas for:
- Complex matrices as [re, im] pairs
- Coordinate presentations of subspaces (1-based indices) with the
  free-coordinate basis used by EP construction
"""

import json
import math
from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field, ValidationError, model_validator

from ..core.error_handling import DocumentParseError, InvalidConstraintSpecError
from ..models.matrix import ComplexMatrix
from ..models.subspace import ConstraintSpec

PathLike = Union[str, Path]

# ================================
# Matrix documents
# ================================

ComplexPair = Tuple[float, float]


class MatrixDocument(BaseModel):
    """
    rows×cols complex matrix, each entry an [re, im] pair
    """
    rows: int = Field(ge=1)
    cols: int = Field(ge=1)
    data: List[List[ComplexPair]]

    @model_validator(mode="after")
    def _check_shape(self) -> "MatrixDocument":
        if len(self.data) != self.rows:
            raise ValueError(f"data has {len(self.data)} rows, expected {self.rows}")
        for i, row in enumerate(self.data):
            if len(row) != self.cols:
                raise ValueError(f"row {i} has {len(row)} entries, expected {self.cols}")
            for re, im in row:
                if not (math.isfinite(re) and math.isfinite(im)):
                    raise ValueError(f"row {i} has a non-finite entry")
        return self

    def to_matrix(self) -> ComplexMatrix:
        arr = np.array(self.data, dtype=np.float64).reshape(self.rows, self.cols, 2)
        return ComplexMatrix(arr[..., 0] + 1j * arr[..., 1])

    @classmethod
    def from_matrix(cls, m: ComplexMatrix) -> "MatrixDocument":
        data = [[(float(z.real), float(z.imag)) for z in row] for row in m.data]
        return cls(rows=m.rows, cols=m.cols, data=data)


# ================================
# Subspace documents
# ================================

class ConstraintSpecDocument(BaseModel):
    """
    Subspace W ⊆ C^n given by free and constrained coordinates (1-based)

    ``coefficients`` maps each constrained index to the vector a with
    x_c = Σ_k a_k · x_{free_k}; ``basis_free_coords`` is the d×d matrix whose
    row j holds the free coordinates of the j-th basis vector of W.
    """
    ambient_dim: int = Field(ge=1)
    free_indices: List[int]
    constrained_indices: List[int]
    coefficients: Dict[int, List[ComplexPair]] = Field(default_factory=dict)
    basis_free_coords: MatrixDocument

    def to_spec(self) -> ConstraintSpec:
        """0-based ConstraintSpec"""
        if set(self.coefficients) != set(self.constrained_indices):
            raise InvalidConstraintSpecError(
                f"coefficients keys {sorted(self.coefficients)} do not match "
                f"constrained indices {sorted(self.constrained_indices)}"
            )
        for index in (*self.free_indices, *self.constrained_indices):
            if not 1 <= index <= self.ambient_dim:
                raise InvalidConstraintSpecError(f"index {index} outside 1..{self.ambient_dim}")
        return ConstraintSpec(
            ambient_dim=self.ambient_dim,
            free_indices=tuple(i - 1 for i in self.free_indices),
            constrained_indices=tuple(c - 1 for c in self.constrained_indices),
            coefficients=tuple(
                tuple(complex(re, im) for re, im in self.coefficients[c])
                for c in self.constrained_indices
            ),
        )

    def free_coords(self) -> ComplexMatrix:
        return self.basis_free_coords.to_matrix()

    @classmethod
    def from_spec(cls, spec: ConstraintSpec, free_coords: ComplexMatrix) -> "ConstraintSpecDocument":
        return cls(
            ambient_dim=spec.ambient_dim,
            free_indices=[i + 1 for i in spec.free_indices],
            constrained_indices=[c + 1 for c in spec.constrained_indices],
            coefficients={
                c + 1: [(a.real, a.imag) for a in row]
                for c, row in zip(spec.constrained_indices, spec.coefficients)
            },
            basis_free_coords=MatrixDocument.from_matrix(free_coords),
        )


# ================================
# File helpers
# ================================

def _read(path: PathLike) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentParseError(f"cannot read {path}: {exc.strerror or exc}", path=str(path)) from exc


def _first_error(exc: ValidationError) -> str:
    err = exc.errors()[0]
    location = ".".join(str(part) for part in err["loc"])
    return f"{location}: {err['msg']}" if location else err["msg"]


def load_matrix(path: PathLike) -> ComplexMatrix:
    """Read a MatrixDocument file"""
    try:
        return MatrixDocument.model_validate_json(_read(path)).to_matrix()
    except ValidationError as exc:
        raise DocumentParseError(f"invalid matrix document {path}: {_first_error(exc)}",
                                 path=str(path)) from exc


def load_constraint_spec(path: PathLike) -> ConstraintSpecDocument:
    """Read a ConstraintSpecDocument file"""
    try:
        return ConstraintSpecDocument.model_validate_json(_read(path))
    except ValidationError as exc:
        raise DocumentParseError(f"invalid spec document {path}: {_first_error(exc)}",
                                 path=str(path)) from exc


def dump_matrix(m: ComplexMatrix) -> str:
    """Compact JSON text of a matrix; floats keep their shortest round-trip form"""
    return json.dumps(MatrixDocument.from_matrix(m).model_dump(mode="json"))
