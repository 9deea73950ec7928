#!/usr/bin/env python3
"""
Moore-Penrose pseudoinverse
SVD-based pinv, Penrose-equation certificate, rank-1 closed form and the
range/corange orthogonal projectors
"""

from typing import Optional

import numpy as np

from ..core.error_handling import DimensionMismatchError, RankNotOneError
from ..models.matrix import DEFAULT_TOLERANCE, ComplexMatrix, SvdResult, Tolerance
from ..models.verdicts import PenroseReport
from .core_linalg import frobenius_norm, svd


def pinv(m: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE,
         factors: Optional[SvdResult] = None) -> ComplexMatrix:
    """
    Moore-Penrose inverse V·diag(σ⁺)·W*, inverting only singular values
    above the numerical-rank cutoff; the zero matrix maps to the zero
    matrix of transposed shape. ``factors`` reuses an SVD of m already at hand.
    """
    result = svd(m) if factors is None else factors
    r = result.numerical_rank(tol)
    if r == 0:
        return ComplexMatrix.zeros(m.cols, m.rows)
    w = result.left.data[:, :r]
    v = result.right.data[:, :r]
    inv = 1.0 / result.singular_values[:r]
    return ComplexMatrix((v * inv) @ w.conj().T)


def penrose_check(t: ComplexMatrix, g: ComplexMatrix,
                  tol: Tolerance = DEFAULT_TOLERANCE) -> PenroseReport:
    """
    Evaluate TGT=T, GTG=G, (TG)*=TG, (GT)*=GT

    Each defect is a Frobenius norm compared against eq_tol·max(1, ‖T‖_F, ‖G‖_F).
    """
    if g.shape != (t.cols, t.rows):
        raise DimensionMismatchError(
            f"G must be {t.cols}x{t.rows} for a {t.rows}x{t.cols} T, got {g.rows}x{g.cols}",
            shapes=(t.shape, g.shape),
        )
    T, G = t.data, g.data
    tg = T @ G
    gt = G @ T
    residuals = (
        float(np.linalg.norm(tg @ T - T)),
        float(np.linalg.norm(gt @ G - G)),
        float(np.linalg.norm(tg.conj().T - tg)),
        float(np.linalg.norm(gt.conj().T - gt)),
    )
    scale = max(1.0, frobenius_norm(t), frobenius_norm(g))
    bound = tol.eq_tol * scale
    return PenroseReport(
        eq1_holds=residuals[0] <= bound,
        eq2_holds=residuals[1] <= bound,
        eq3_holds=residuals[2] <= bound,
        eq4_holds=residuals[3] <= bound,
        residuals=residuals,
        scale=scale,
    )


def pinv_rank1(m: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> ComplexMatrix:
    """T† = T*/α with α = trace(T*T), valid for rank-1 T only"""
    r = svd(m).numerical_rank(tol)
    if r != 1:
        raise RankNotOneError(r)
    alpha = float(np.vdot(m.data, m.data).real)
    return ComplexMatrix(m.data.conj().T / alpha)


def range_projector(m: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> ComplexMatrix:
    """M·M†, the orthogonal projector onto R(M)"""
    return m @ pinv(m, tol)


def corange_projector(m: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> ComplexMatrix:
    """M†·M, the orthogonal projector onto R(M*)"""
    return pinv(m, tol) @ m
