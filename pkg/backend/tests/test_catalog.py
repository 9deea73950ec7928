#!/usr/bin/env python3
"""
Tests for the worked-example catalog: every case must reproduce its
expected booleans at the default and at a tightened tolerance
"""

import numpy as np
import pytest

from eplab.core.error_handling import CatalogMismatchError
from eplab.models.matrix import Tolerance
from eplab.models.verdicts import CaseCheck, CounterexampleCase
from eplab.services import catalog as catalog_module
from eplab.services.catalog import case_index, catalog, run_case, run_catalog
from eplab.services.ep import ep_construct


def test_catalog_has_every_case():
    cases = catalog()
    assert len(cases) == 11
    assert len({case.case_id for case in cases}) == 11
    assert all(case.checks for case in cases)


def test_catalog_passes_at_default_tolerance():
    outcome = run_catalog()
    assert outcome.passed
    assert outcome.failed_cases == []
    assert len(outcome.cases) == 11


def test_catalog_passes_at_tightened_tolerance():
    assert run_catalog(Tolerance(eq_tol=1e-12)).passed


@pytest.mark.parametrize("case_id", [case.case_id for case in catalog()])
def test_each_case_reproduces(case_id):
    outcome = run_case(case_index()[case_id])
    assert outcome.mismatches == []
    assert all(v.consistent for v in outcome.verdicts)


@pytest.mark.parametrize("case_id", [case.case_id for case in catalog()])
def test_source_cites_the_rules_it_runs(case_id):
    case = case_index()[case_id]
    cited, _, description = case.source.partition(": ")
    assert set(cited.split(", ")) == {check.rule for check in case.checks}
    assert description


def test_prescribed_range_note_names_the_corrected_column():
    case = case_index()["ep-prescribed-range"]
    assert "(2, 1+i, i-1)" in case.note
    column = case.expected_operator.data[:, 1]
    np.testing.assert_allclose(column, [2, 1 + 1j, 1j - 1])


def test_non_normal_commuting_ep_residuals():
    outcome = run_case(case_index()["commuting-ep-non-normal"])
    classic, mp, _ = outcome.verdicts
    assert classic.evidence("AN*=N*A").residual > 0.5
    assert mp.evidence("AT†=T†A").residual < 1e-9


def test_commuting_non_ep_residual():
    (verdict,) = run_case(case_index()["commuting-non-ep"]).verdicts
    assert verdict.evidence("AT†=T†A").residual > 0.01


def test_prescribed_range_operator():
    case = case_index()["ep-prescribed-range"]
    t = ep_construct(case.constraint, case.operators["X"])
    np.testing.assert_allclose(t.data, case.expected_operator.data, atol=1e-12)


def test_tampered_expectation_is_reported():
    case = case_index()["commuting-non-ep"]
    check = case.checks[0]
    flipped = CaseCheck(check.rule, check.operands, {**check.expected, "T EP": True})
    tampered = CounterexampleCase(case.case_id, case.source, case.block_size, case.operators, (flipped,))
    outcome = run_case(tampered)
    assert not outcome.passed
    assert outcome.mismatches == ["fuglede-mp: T EP"]


def test_strict_catalog_raises_on_mismatch(monkeypatch):
    case = case_index()["commuting-non-ep"]
    check = case.checks[0]
    flipped = CaseCheck(check.rule, check.operands, {**check.expected, "AT=TA": False})
    tampered = CounterexampleCase(case.case_id, case.source, case.block_size, case.operators, (flipped,))
    monkeypatch.setattr(catalog_module, "catalog", lambda: [tampered])

    with pytest.raises(CatalogMismatchError) as info:
        run_catalog()
    assert info.value.case_id == "commuting-non-ep"
    assert info.value.field == "fuglede-mp: AT=TA"

    outcome = run_catalog(strict=False)
    assert outcome.failed_cases == ["commuting-non-ep"]
