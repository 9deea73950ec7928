#!/usr/bin/env python3
"""
Shared fixtures for the eplab test suite
"""

import json
import os
from pathlib import Path
from typing import Callable, Sequence

# settings are read at import time
os.environ.setdefault("EPLAB_LOG_LEVEL", "WARNING")

import numpy as np
import pytest

from eplab.models.matrix import ComplexMatrix, Tolerance
from eplab.schemas.documents import ConstraintSpecDocument, MatrixDocument
from eplab.models.subspace import ConstraintSpec


def cm(rows: Sequence[Sequence[complex]]) -> ComplexMatrix:
    return ComplexMatrix.from_rows(rows)


# ================================
# Matrices from the worked examples
# ================================

@pytest.fixture
def ep_not_normal() -> ComplexMatrix:
    """EP, singular, not normal; kernel spanned by (1, -1, -1)"""
    return cm([[1, 1, 0], [2, 1, 1], [-1, 0, -1]])


@pytest.fixture
def nilpotent() -> ComplexMatrix:
    return cm([[0, 1], [0, 0]])


@pytest.fixture
def rank_one() -> ComplexMatrix:
    return cm([[1, 1], [2, 2]])


@pytest.fixture
def prescribed_range_spec() -> ConstraintSpec:
    """W = {(x1, x1 + x3, x3)}"""
    return ConstraintSpec.build(3, (0, 2), {1: (1, 1)})


@pytest.fixture
def prescribed_range_coords() -> ComplexMatrix:
    return cm([[1, 1j], [1, -1]])


# ================================
# Tolerances
# ================================

@pytest.fixture
def tol() -> Tolerance:
    return Tolerance()


@pytest.fixture
def suite_tol() -> Tolerance:
    """Rank cutoff for randomly generated (well-conditioned) matrices"""
    return Tolerance(rank_tol_factor=1e-10)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)


# ================================
# Document files
# ================================

@pytest.fixture
def matrix_file(tmp_path: Path) -> Callable[..., Path]:
    """Write a matrix document and return its path"""
    counter = {"n": 0}

    def write(m, name: str = "") -> Path:
        counter["n"] += 1
        matrix = m if isinstance(m, ComplexMatrix) else cm(m)
        path = tmp_path / (name or f"matrix_{counter['n']}.json")
        path.write_text(MatrixDocument.from_matrix(matrix).model_dump_json(), encoding="utf-8")
        return path

    return write


@pytest.fixture
def spec_file(tmp_path: Path) -> Callable[..., Path]:
    """Write a constraint spec document and return its path"""

    def write(spec: ConstraintSpec, coords: ComplexMatrix, name: str = "spec.json") -> Path:
        path = tmp_path / name
        path.write_text(ConstraintSpecDocument.from_spec(spec, coords).model_dump_json(), encoding="utf-8")
        return path

    return write


@pytest.fixture
def raw_file(tmp_path: Path) -> Callable[[str, object], Path]:
    """Write arbitrary JSON (or text) to a file"""

    def write(name: str, payload: object) -> Path:
        path = tmp_path / name
        text = payload if isinstance(payload, str) else json.dumps(payload)
        path.write_text(text, encoding="utf-8")
        return path

    return write
