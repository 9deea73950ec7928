#!/usr/bin/env python3
"""
Tests for environment-driven settings
"""

import pytest
from pydantic import ValidationError

from eplab.core.config import Settings


def test_defaults(monkeypatch):
    for name in ("EPLAB_EQ_TOL", "EPLAB_SEED", "EPLAB_SVD_METHOD", "EPLAB_RANK_TOL_FACTOR"):
        monkeypatch.delenv(name, raising=False)
    settings = Settings()
    assert settings.EQ_TOL == 1e-9
    assert settings.RANK_TOL_FACTOR is None
    assert settings.SVD_METHOD == "lapack"
    assert settings.SUITE_TRIALS == 200
    assert settings.SUITE_MAX_DIM == 12


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("EPLAB_SEED", "42")
    monkeypatch.setenv("EPLAB_EQ_TOL", "1e-11")
    monkeypatch.setenv("EPLAB_SVD_METHOD", "jacobi")
    settings = Settings()
    assert settings.SEED == 42
    assert settings.EQ_TOL == 1e-11
    assert settings.SVD_METHOD == "jacobi"


@pytest.mark.parametrize("name,value", [
    ("EPLAB_EQ_TOL", "0"),
    ("EPLAB_RANK_TOL_FACTOR", "-1"),
    ("EPLAB_SVD_METHOD", "qr"),
    ("EPLAB_SUITE_MAX_DIM", "1"),
    ("EPLAB_SUITE_WORKERS", "0"),
])
def test_invalid_values_are_rejected(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValidationError):
        Settings()


def test_tolerance_helpers(monkeypatch):
    monkeypatch.delenv("EPLAB_EQ_TOL", raising=False)
    monkeypatch.delenv("EPLAB_RANK_TOL_FACTOR", raising=False)
    settings = Settings()
    assert settings.tolerance().eq_tol == 1e-9
    assert settings.tolerance(1e-12).eq_tol == 1e-12
    assert settings.tolerance().rank_tol_factor is None
    suite = settings.suite_tolerance()
    assert suite.rank_tol_factor == 1e-10
    assert suite.eq_tol == 1e-9
