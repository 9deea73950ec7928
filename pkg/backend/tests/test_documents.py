#!/usr/bin/env python3
"""
Tests for the matrix and constraint-spec documents and the RunReport schema
"""

import json

import numpy as np
import pytest
from pydantic import ValidationError

from eplab.core.error_handling import DocumentParseError, InvalidConstraintSpecError
from eplab.models.matrix import ComplexMatrix, Tolerance
from eplab.schemas.documents import (
    ConstraintSpecDocument,
    MatrixDocument,
    dump_matrix,
    load_constraint_spec,
    load_matrix,
)
from eplab.schemas.reports import RunReport, ToleranceRecord, report_schema
from eplab.services.catalog import catalog

from conftest import cm


# ================================
# Matrix documents
# ================================

def test_catalog_matrices_survive_serialization(tmp_path):
    path = tmp_path / "m.json"
    for case in catalog():
        for m in case.operators.values():
            path.write_text(dump_matrix(m), encoding="utf-8")
            np.testing.assert_array_equal(load_matrix(path).data, m.data)


def test_dump_matrix_layout():
    doc = json.loads(dump_matrix(cm([[1 + 2j, 0.5]])))
    assert doc == {"rows": 1, "cols": 2, "data": [[[1.0, 2.0], [0.5, 0.0]]]}


@pytest.mark.parametrize("payload", [
    {"rows": 2, "cols": 1, "data": [[[1, 0]]]},
    {"rows": 1, "cols": 2, "data": [[[1, 0]]]},
    {"rows": 0, "cols": 0, "data": []},
    {"rows": 1, "cols": 1, "data": [[[1, 0, 0]]]},
    {"rows": 1, "cols": 1},
])
def test_matrix_document_rejects_bad_shapes(payload):
    with pytest.raises(ValidationError):
        MatrixDocument.model_validate(payload)


def test_matrix_document_rejects_non_finite():
    with pytest.raises(ValidationError):
        MatrixDocument.model_validate_json('{"rows": 1, "cols": 1, "data": [[[NaN, 0]]]}')


def test_load_matrix_errors(tmp_path, raw_file):
    with pytest.raises(DocumentParseError) as info:
        load_matrix(tmp_path / "missing.json")
    assert "cannot read" in info.value.message
    with pytest.raises(DocumentParseError) as info:
        load_matrix(raw_file("bad.json", {"rows": 1}))
    assert "invalid matrix document" in info.value.message


# ================================
# Constraint-spec documents
# ================================

def test_spec_document_uses_one_based_indices(prescribed_range_spec, prescribed_range_coords):
    doc = ConstraintSpecDocument.from_spec(prescribed_range_spec, prescribed_range_coords)
    assert doc.free_indices == [1, 3]
    assert doc.constrained_indices == [2]
    assert doc.coefficients == {2: [(1.0, 0.0), (1.0, 0.0)]}
    spec = doc.to_spec()
    assert spec.free_indices == (0, 2)
    assert spec.coefficients == ((1 + 0j, 1 + 0j),)
    np.testing.assert_array_equal(doc.free_coords().data, prescribed_range_coords.data)


def test_spec_document_file(spec_file, prescribed_range_spec, prescribed_range_coords):
    doc = load_constraint_spec(spec_file(prescribed_range_spec, prescribed_range_coords))
    assert doc.to_spec().constrained_indices == (1,)


def test_spec_document_key_mismatch():
    doc = ConstraintSpecDocument(
        ambient_dim=3,
        free_indices=[1, 3],
        constrained_indices=[2],
        coefficients={3: [(1, 0), (1, 0)]},
        basis_free_coords=MatrixDocument.from_matrix(ComplexMatrix.identity(2)),
    )
    with pytest.raises(InvalidConstraintSpecError):
        doc.to_spec()


def test_spec_document_load_error(raw_file):
    with pytest.raises(DocumentParseError):
        load_constraint_spec(raw_file("spec.json", {"ambient_dim": 3}))


# ================================
# Reports
# ================================

def test_tolerance_record():
    record = ToleranceRecord.from_tolerance(Tolerance(eq_tol=1e-10, rank_tol_factor=1e-8))
    assert record.eq_tol == 1e-10
    assert record.rank_tol_factor == 1e-8
    assert record.machine_eps == float(np.finfo(np.float64).eps)


def test_run_report_omits_unset_fields():
    report = RunReport(
        tool_version="1.0.0",
        command="schema",
        tolerance=ToleranceRecord(eq_tol=1e-9),
        passed=True,
    )
    payload = json.loads(report.to_json())
    assert set(payload) == {"tool_version", "command", "tolerance", "passed"}


def test_report_schema_lists_fields():
    props = report_schema()["properties"]
    for name in ("tool_version", "tolerance", "passed", "cases", "checks", "verdict", "seed"):
        assert name in props
