#!/usr/bin/env python3
"""
Core dense linear algebra
Adjoint, products, tolerance-aware equality, SVD (LAPACK or one-sided Jacobi)
and numerical rank over ComplexMatrix values.
"""

from typing import Optional, Tuple

import numpy as np

from ..core.config import get_settings
from ..core.error_handling import DimensionMismatchError, NonSquareError, SvdConvergenceError
from ..models.matrix import DEFAULT_TOLERANCE, MACHINE_EPS, ComplexMatrix, SvdResult, Tolerance

SVD_METHODS = ("lapack", "jacobi")


def adjoint(m: ComplexMatrix) -> ComplexMatrix:
    """Conjugate transpose"""
    return m.H


def matmul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Matrix product; raises DimensionMismatchError when a.cols != b.rows"""
    return a @ b


def identity(n: int) -> ComplexMatrix:
    return ComplexMatrix.identity(n)


def zeros(rows: int, cols: int) -> ComplexMatrix:
    return ComplexMatrix.zeros(rows, cols)


def frobenius_norm(m: ComplexMatrix) -> float:
    return float(np.linalg.norm(m.data)) if m.data.size else 0.0


def require_square(m: ComplexMatrix, name: str = "matrix") -> int:
    if not m.is_square:
        raise NonSquareError(f"{name} must be square, got {m.rows}x{m.cols}", shapes=(m.shape,))
    return m.rows


def require_same_square(*named: Tuple[str, ComplexMatrix]) -> int:
    """All operands square and of one size; returns that size"""
    sizes = {require_square(m, name) for name, m in named}
    if len(sizes) != 1:
        raise DimensionMismatchError(
            "operands must be square matrices of the same size",
            shapes=tuple((name, m.shape) for name, m in named),
        )
    return sizes.pop()


def equality_residual(a: ComplexMatrix, b: ComplexMatrix) -> Tuple[float, float]:
    """
    Frobenius defect and the scale it is compared against

    Returns:
        (‖A−B‖_F, max(1, ‖A‖_F, ‖B‖_F))
    """
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shape mismatch {a.shape} vs {b.shape}", shapes=(a.shape, b.shape))
    residual = float(np.linalg.norm(a.data - b.data)) if a.data.size else 0.0
    scale = max(1.0, frobenius_norm(a), frobenius_norm(b))
    return residual, scale


def approx_eq(a: ComplexMatrix, b: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """‖A−B‖_F ≤ eq_tol·max(1, ‖A‖_F, ‖B‖_F)"""
    residual, scale = equality_residual(a, b)
    return residual <= tol.eq_tol * scale


def is_hermitian(m: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    return m.is_square and approx_eq(m, m.H, tol)


def _fix_phases(u: np.ndarray, s: np.ndarray, vh: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Make the largest-magnitude entry of every left singular vector real positive,
    compensating on the paired right vector. Right vectors that are unpaired or
    belong to a negligible singular value get the same convention on their own.
    """
    k = s.size
    negligible = s <= max(u.shape[0], vh.shape[0]) * MACHINE_EPS * (s[0] if k else 0.0)

    phase = _unit_phases(u[np.argmax(np.abs(u), axis=0), np.arange(u.shape[1])])
    u = u / phase
    vh = vh.copy()
    vh[:k, :] *= phase[:k, None]

    unpaired = np.ones(vh.shape[0], dtype=bool)
    unpaired[:k] = negligible
    rows = np.flatnonzero(unpaired)
    if rows.size:
        v = vh[rows, :].conj()
        v_phase = _unit_phases(v[np.arange(rows.size), np.argmax(np.abs(v), axis=1)])
        vh[rows, :] = (v / v_phase[:, None]).conj()
    return u, vh


def _unit_phases(values: np.ndarray) -> np.ndarray:
    """values/|values|, with 1 where a value is zero"""
    mag = np.abs(values)
    phases = np.ones_like(values)
    nonzero = mag > 0
    phases[nonzero] = values[nonzero] / mag[nonzero]
    return phases


def _complete_unitary(q: np.ndarray, m: int) -> np.ndarray:
    """Extend the orthonormal columns of q (m×r) to an m×m unitary"""
    r = q.shape[1]
    if r == m:
        return q
    full, _ = np.linalg.qr(np.hstack([q, np.eye(m, dtype=np.complex128)]), mode="complete")
    full = full[:, :m].copy()
    full[:, :r] = q
    return full


def _jacobi_tall(a: np.ndarray, max_sweeps: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    """
    One-sided (Hestenes) Jacobi on an m×n array with m ≥ n

    Returns:
        (U m×m, σ length n descending, V n×n, sweeps used)
    """
    m, n = a.shape
    g = a.astype(np.complex128, copy=True)
    v = np.eye(n, dtype=np.complex128)
    threshold = max(m, 1) * MACHINE_EPS

    sweeps = 0
    converged = n < 2
    while not converged:
        if sweeps >= max_sweeps:
            raise SvdConvergenceError(
                f"Jacobi SVD did not converge in {max_sweeps} sweeps", iterations=sweeps
            )
        sweeps += 1
        rotated = False
        # cyclic row-by-row order keeps the result deterministic
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = float(np.vdot(g[:, p], g[:, p]).real)
                beta = float(np.vdot(g[:, q], g[:, q]).real)
                gamma = np.vdot(g[:, p], g[:, q])
                mag = abs(gamma)
                if mag == 0.0 or mag <= threshold * np.sqrt(alpha * beta):
                    continue
                rotated = True
                phase = gamma / mag
                zeta = (beta - alpha) / (2.0 * mag)
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t

                gp, gq = g[:, p].copy(), g[:, q] / phase
                g[:, p] = c * gp - s * gq
                g[:, q] = s * gp + c * gq

                vp, vq = v[:, p].copy(), v[:, q] / phase
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        converged = not rotated

    sigma = np.linalg.norm(g, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    g = g[:, order]
    v = v[:, order]

    floor = sigma[0] * MACHINE_EPS if sigma.size else 0.0
    nonzero = int(np.count_nonzero(sigma > floor)) if sigma.size and sigma[0] > 0 else 0
    u_r = g[:, :nonzero] / sigma[:nonzero]
    u = _complete_unitary(u_r, m)
    return u, sigma, v, sweeps


def _jacobi_svd(a: np.ndarray, max_sweeps: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    m, n = a.shape
    if m >= n:
        u, s, v, sweeps = _jacobi_tall(a, max_sweeps)
        return u, s, v.conj().T, sweeps
    # A* = U' Σ V'*  ⇒  A = V' Σ U'*
    u_t, s, v_t, sweeps = _jacobi_tall(a.conj().T, max_sweeps)
    return v_t, s, u_t.conj().T, sweeps


def svd(m: ComplexMatrix, method: Optional[str] = None,
        max_sweeps: Optional[int] = None) -> SvdResult:
    """
    Full singular value decomposition M = W·diag(σ)·V*

    Args:
        m: Input matrix
        method: "lapack" (numpy) or "jacobi" (one-sided Jacobi); defaults to settings
        max_sweeps: Jacobi sweep budget; defaults to settings

    Returns:
        SvdResult with unitary factors and descending σ, phase-normalised
    """
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return SvdResult(ComplexMatrix.identity(rows), np.zeros(0), ComplexMatrix.identity(cols))

    settings = get_settings()
    method = method or settings.SVD_METHOD
    max_sweeps = max_sweeps or settings.JACOBI_MAX_SWEEPS
    iterations: Optional[int] = None
    if method == "lapack":
        try:
            u, s, vh = np.linalg.svd(m.data, full_matrices=True)
        except np.linalg.LinAlgError as exc:
            raise SvdConvergenceError(f"LAPACK SVD failed: {exc}") from exc
    elif method == "jacobi":
        u, s, vh, iterations = _jacobi_svd(m.data, max_sweeps)
    else:
        raise ValueError(f"unknown SVD method {method!r}, expected one of {SVD_METHODS}")

    u, vh = _fix_phases(u, s, vh)
    return SvdResult(
        left=ComplexMatrix(u),
        singular_values=s,
        right=ComplexMatrix(vh.conj().T),
        iterations=iterations,
    )


def rank(m: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> int:
    """Number of singular values above rank_tol_factor·σ_max (0 for the zero matrix)"""
    return svd(m).numerical_rank(tol)


def truncated_product(a: ComplexMatrix, b: ComplexMatrix,
                      tol: Tolerance = DEFAULT_TOLERANCE) -> ComplexMatrix:
    """
    A·B with every singular value at or below the rank cutoff of
    ‖A‖_F·‖B‖_F set to zero

    The cutoff of the product alone scales with σ_max(AB), so a product that
    cancels exactly keeps its rounding residue as full rank. Measured against
    the operands instead, that residue is rank zero.
    """
    product = a @ b
    if product.data.size == 0:
        return product
    reference = frobenius_norm(a) * frobenius_norm(b)
    result = svd(product)
    cutoff = tol.rank_cutoff(product.shape, reference)
    k = int(np.count_nonzero(result.singular_values > cutoff))
    if k == result.singular_values.size:
        return product
    w = result.left.data[:, :k]
    v = result.right.data[:, :k]
    return ComplexMatrix((w * result.singular_values[:k]) @ v.conj().T)


def svd_quality(m: ComplexMatrix, result: SvdResult) -> Tuple[float, float, float]:
    """
    Residuals of the SvdResult invariants

    Returns:
        (‖W·Σ·V* − M‖_F, ‖W*W − I‖_F, ‖V*V − I‖_F)
    """
    recon = float(np.linalg.norm(result.reconstruct().data - m.data))
    w = result.left.data
    v = result.right.data
    left = float(np.linalg.norm(w.conj().T @ w - np.eye(w.shape[1])))
    right = float(np.linalg.norm(v.conj().T @ v - np.eye(v.shape[1])))
    return recon, left, right
