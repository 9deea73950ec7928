#!/usr/bin/env python3
"""
EP matrices
Five equivalent EP characterizations, the bijective witness P with PT = T*,
construction of an EP matrix with prescribed range, normality and rank-1
checks, and seeded EP generators
"""

from typing import Optional, Tuple

import numpy as np

from ..core.error_handling import (
    CharacterizationDisagreementError,
    DimensionMismatchError,
    PostconditionError,
    SingularFreeCoordinatesError,
)
from ..core.logger import VerificationLogger
from ..models.matrix import DEFAULT_TOLERANCE, ComplexMatrix, Tolerance
from ..models.subspace import ConstraintSpec
from ..models.verdicts import EPReport, EPWitness, Evidence, Implication, RankOneProfile, TheoremVerdict
from . import subspaces
from .core_linalg import equality_residual, frobenius_norm, require_square, svd
from .generators import SeedLike, as_rng, complex_gaussian, ep_block_instance, random_polynomial
from .pseudoinverse import pinv

logger = VerificationLogger("ep")


def ep_witness(t: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE,
               g: Optional[ComplexMatrix] = None) -> EPWitness:
    """
    P = T*·T† + (I − T·T†)

    PT = T*·T†·T, which equals T* exactly when R(T) ⊆ R(T*). For EP matrices
    P is bijective with PT = T*; otherwise one of the two checks fails.
    Bijectivity is full numerical rank under the rank cutoff. ``g`` is T† when
    the caller already has it.
    """
    n = require_square(t, "T")
    g = pinv(t, tol) if g is None else g
    tg = (t @ g).data
    p = ComplexMatrix(t.data.conj().T @ g.data + np.eye(n) - tg)

    residual, scale = equality_residual(p @ t, t.H)
    result = svd(p)
    sigma = result.singular_values
    return EPWitness(
        operator=p,
        pt_residual=residual,
        pt_holds=residual <= tol.eq_tol * scale,
        min_singular_value=float(sigma[-1]) if sigma.size else 0.0,
        rank_deficiency=n - result.numerical_rank(tol),
    )


def is_ep(t: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> EPReport:
    """
    Evaluate the five EP characterizations

    (1) R(T) = R(T*)   (2) TT† = T†T   (3) N(T)⊥ = R(T)
    (4) N(T) = N(T*)   (5) the witness P is bijective with PT = T*

    Raises CharacterizationDisagreementError if they do not agree.
    """
    require_square(t, "T")
    factors = svd(t)
    spaces = subspaces.fundamental_subspaces(t, tol, factors)

    d1 = subspaces.projector_distance(spaces.column_space, spaces.row_space)

    g = pinv(t, tol, factors)
    d2, scale2 = equality_residual(t @ g, g @ t)

    d3 = subspaces.projector_distance(subspaces.complement(spaces.null_space), spaces.column_space)
    d4 = subspaces.projector_distance(spaces.null_space, spaces.left_null_space)

    witness = ep_witness(t, tol, g)
    # rank deficiency of a singular P, else the PT = T* residual
    d5 = witness.pt_residual if witness.full_rank else float(witness.rank_deficiency)

    report = EPReport(
        char_ranges_equal=d1 <= tol.eq_tol,
        char_mp_commute=d2 <= tol.eq_tol * scale2,
        char_nullperp_is_range=d3 <= tol.eq_tol,
        char_null_equal=d4 <= tol.eq_tol,
        char_witness_bijective=witness.succeeded,
        residuals=(d1, d2, d3, d4, d5),
    )
    if not report.unanimous:
        raise CharacterizationDisagreementError(report)
    return report


def ep_evidence(t: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> Evidence:
    """'T is EP' as checker evidence; residual is ‖TT† − T†T‖_F"""
    report = is_ep(t, tol)
    return Evidence(report.verdict, report.residuals[1])


def normal_residual(t: ComplexMatrix) -> Tuple[float, float]:
    """(‖TT* − T*T‖_F, max(1, ‖T‖_F²))"""
    require_square(t, "T")
    a = t.data
    residual = float(np.linalg.norm(a @ a.conj().T - a.conj().T @ a))
    return residual, max(1.0, frobenius_norm(t) ** 2)


def normal_evidence(t: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> Evidence:
    residual, scale = normal_residual(t)
    return Evidence(residual <= tol.eq_tol * scale, residual)


def is_normal(t: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """‖TT* − T*T‖_F ≤ eq_tol·max(1, ‖T‖_F²)"""
    return normal_evidence(t, tol).holds


def check_rank1_remarks(t: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> RankOneProfile:
    """Flags behind 'rank-1 EP ⇒ normal' and 'rank-1 real EP ⇒ symmetric'"""
    require_square(t, "T")
    scale = max(1.0, frobenius_norm(t))
    normal_res, normal_scale = normal_residual(t)
    imag = float(np.linalg.norm(t.data.imag))
    symmetric_res = float(np.linalg.norm(t.data - t.data.T))
    return RankOneProfile(
        is_rank1=svd(t).numerical_rank(tol) == 1,
        is_ep=is_ep(t, tol).verdict,
        is_normal=normal_res <= tol.eq_tol * normal_scale,
        is_real=imag <= tol.eq_tol * scale,
        is_symmetric=symmetric_res <= tol.eq_tol * scale,
        normal_residual=normal_res,
        symmetric_residual=symmetric_res,
    )


def _assemble(spec: ConstraintSpec, free_coords: ComplexMatrix, tol: Tolerance) -> ComplexMatrix:
    """
    T = E·Xᵀ·E*

    Column at free index F(m) is the embedded basis vector v_m = E·x_m; column
    at constrained index c is E·y with y_m = Σ_k conj(a^(c)_k)·x_{km}.
    """
    d = spec.dim
    n = spec.ambient_dim
    if free_coords.shape != (d, d):
        raise DimensionMismatchError(
            f"free coordinates must be {d}x{d}, got {free_coords.rows}x{free_coords.cols}",
            shapes=(free_coords.shape,),
        )
    if d == 0:
        return ComplexMatrix.zeros(n, n)
    if svd(free_coords).numerical_rank(tol) < d:
        raise SingularFreeCoordinatesError()
    e = spec.embedding()
    return ComplexMatrix(e @ free_coords.data.T @ e.conj().T)


def ep_construct(spec: ConstraintSpec, free_coords: ComplexMatrix,
                 tol: Tolerance = DEFAULT_TOLERANCE) -> ComplexMatrix:
    """
    EP matrix of order n whose range is the subspace W given by ``spec``

    Args:
        spec: Coordinate presentation of W (d free coordinates)
        free_coords: d×d invertible matrix, row j = free coordinates of basis vector v_j
        tol: Tolerance for the postcondition

    Returns:
        T with R(T) = R(T*) = W; verified before returning
    """
    t = _assemble(spec, free_coords, tol)
    report = is_ep(t, tol)
    target = subspaces.from_constraint_form(spec, tol)
    range_ok = subspaces.equal(subspaces.from_columns(t, tol), target, tol)
    verified = report.verdict and range_ok
    logger.log_construction(spec.ambient_dim, spec.dim, verified)
    if not verified:
        raise PostconditionError(
            "constructed matrix failed verification",
            technical_details=f"is_ep={report.verdict}, range_equal={range_ok}",
        )
    return t


def check_ep_construction(spec: ConstraintSpec, free_coords: ComplexMatrix,
                          tol: Tolerance = DEFAULT_TOLERANCE) -> TheoremVerdict:
    """Existence of an EP matrix with prescribed range, as a verdict"""
    d = spec.dim
    x_rank = svd(free_coords).numerical_rank(tol) if d else 0
    x_ok = Evidence(x_rank == d, float(d - x_rank))
    if not x_ok.holds:
        t = ComplexMatrix.zeros(spec.ambient_dim, spec.ambient_dim)
    else:
        t = _assemble(spec, free_coords, tol)
    target = subspaces.from_constraint_form(spec, tol)
    distance = subspaces.projector_distance(subspaces.from_columns(t, tol), target)
    adj_distance = subspaces.projector_distance(subspaces.from_columns(t.H, tol), target)
    return TheoremVerdict(
        theorem_id="ep-construction",
        hypotheses={"free coordinates invertible": x_ok},
        conclusions={
            "T EP": ep_evidence(t, tol),
            "R(T)=W": Evidence(distance <= tol.eq_tol, distance),
            "R(T*)=W": Evidence(adj_distance <= tol.eq_tol, adj_distance),
        },
        observations={"T normal": normal_evidence(t, tol)},
    )


def check_normal_implies_ep(t: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> TheoremVerdict:
    """Normal ⇒ EP and invertible ⇒ EP; the converses are not claimed"""
    n = require_square(t, "T")
    r = svd(t).numerical_rank(tol)
    return TheoremVerdict(
        theorem_id="normal-ep",
        hypotheses={"T normal": normal_evidence(t, tol)},
        conclusions={"T EP": ep_evidence(t, tol)},
        observations={"T invertible": Evidence(r == n, float(n - r))},
        implications=(
            Implication("normal-ep", ("T normal",), ("T EP",)),
            Implication("invertible-ep", ("T invertible",), ("T EP",)),
        ),
    )


def random_ep(n: int, r: int, seed: SeedLike, make_normal: bool = False) -> ComplexMatrix:
    """
    T = Q·diag(B, 0)·Q* with Q Haar unitary and B invertible r×r
    (diagonal when ``make_normal``)
    """
    instance = ep_block_instance(n, r, as_rng(seed), make_normal=make_normal)
    return ComplexMatrix(instance.matrix())


def random_commuting_pair(n: int, r: int, seed: SeedLike) -> Tuple[ComplexMatrix, ComplexMatrix]:
    """
    (T, A) with T = Q·diag(B, 0)·Q* EP and A = Q·diag(p(B), D)·Q*, so AT = TA
    """
    rng = as_rng(seed)
    instance = ep_block_instance(n, r, rng)
    top = random_polynomial(instance.block, rng)
    bottom = complex_gaussian(rng, n - r, n - r)
    return ComplexMatrix(instance.matrix()), ComplexMatrix(instance.lift(top, bottom))
