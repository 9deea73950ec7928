#!/usr/bin/env python3
"""
Random property suite
Seeded sweeps over every checker and numerical kernel:
- soundness: hypothesis-satisfying instances must yield every conclusion
- consistency: unstructured instances must never witness hypotheses true
  with a conclusion false
- kernel properties: SVD quality, Penrose equations, characterization
  unanimity, subspace identities, rank-1 facts, polar factors

Every trial draws from its own stream derived from (seed, check, trial), so
the report does not depend on the number of worker threads.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..core.error_handling import safe_execute
from ..core.logger import SuiteLogger
from ..core.metrics import CheckMetrics, SweepMetrics
from ..models.matrix import ComplexMatrix, Tolerance
from ..models.verdicts import TheoremVerdict
from . import instances, subspaces
from .core_linalg import approx_eq, frobenius_norm, is_hermitian, svd, svd_quality
from .ep import check_ep_construction, check_rank1_remarks, is_ep
from .fuglede import RULES, polar_decompose, run_rule
from .generators import annulus_values, complex_gaussian, haar_unitary, random_low_rank, trial_rng
from .pseudoinverse import penrose_check, pinv, pinv_rank1

logger = SuiteLogger()

SVD_MAX_DIM = 32
UNANIMITY_MAX_DIM = 16
SVD_QUALITY_BOUND = 1e-10
# unanimity and SVD quality run 500 trials when the theorem checks run 200
WIDE_TRIAL_SCALE = 2.5


@dataclass(frozen=True)
class TrialResult:
    ok: bool
    residual: float = 0.0
    detail: str = ""


TrialFn = Callable[[np.random.Generator, int, Tolerance], TrialResult]


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    run: TrialFn
    dims: Optional[Tuple[int, int]] = None
    trial_scale: float = 1.0

    def trial_count(self, trials: int) -> int:
        return max(1, int(round(trials * self.trial_scale)))


@dataclass
class SuiteOutcome:
    seed: int
    trials: int
    max_dim: int
    tolerance: Tolerance
    checks: List[CheckMetrics] = field(default_factory=list)

    @property
    def total_violations(self) -> int:
        return sum(c.violations for c in self.checks)

    @property
    def passed(self) -> bool:
        return self.total_violations == 0


def _required_residual(verdict: TheoremVerdict, with_hypotheses: bool, with_observations: bool) -> float:
    groups = [verdict.conclusions]
    if with_hypotheses:
        groups.append(verdict.hypotheses)
    if with_observations:
        groups.append(verdict.observations)
    return max((e.residual for g in groups for e in g.values()), default=0.0)


def _failed_names(verdict: TheoremVerdict, with_hypotheses: bool, with_observations: bool) -> List[str]:
    groups = [verdict.conclusions]
    if with_hypotheses:
        groups.append(verdict.hypotheses)
    if with_observations:
        groups.append(verdict.observations)
    return [name for g in groups for name, e in g.items() if not e.holds]


def soundness(rule: str, builder: Callable[[np.random.Generator, int], Dict[str, ComplexMatrix]],
              with_hypotheses: bool = True, with_observations: bool = False) -> TrialFn:
    """Instances built to satisfy the hypotheses must satisfy every conclusion"""

    def trial(rng: np.random.Generator, n: int, tol: Tolerance) -> TrialResult:
        verdict = run_rule(rule, builder(rng, n), tol)
        failed = _failed_names(verdict, with_hypotheses, with_observations)
        ok = not failed and verdict.consistent
        return TrialResult(ok, _required_residual(verdict, with_hypotheses, with_observations),
                           "" if ok else f"false: {', '.join(failed) or 'consistent'}")

    return trial


def consistency(rule: str) -> TrialFn:
    """No unstructured instance may witness hypotheses true and a conclusion false"""
    optional = {name for _, name in RULES[rule].optional}

    def trial(rng: np.random.Generator, n: int, tol: Tolerance) -> TrialResult:
        operands = instances.unstructured(rng, n)
        if optional and rng.random() < 0.5:
            operands = {k: v for k, v in operands.items() if k not in optional}
        verdict = run_rule(rule, operands, tol)
        residual = max((e.residual for e in verdict.conclusions.values()), default=0.0) \
            if verdict.hypotheses_hold else 0.0
        if verdict.consistent:
            return TrialResult(True, residual)
        broken = [s.theorem_id for s in verdict.implication_status() if not s.consistent]
        return TrialResult(False, residual, f"implication violated: {', '.join(broken)}")

    return trial


def _product_unitary(rng: np.random.Generator, n: int, tol: Tolerance) -> TrialResult:
    verdict = run_rule("product-ep", instances.product_unitary(rng, n), tol)
    return TrialResult(verdict.consistent, 0.0, "" if verdict.consistent else "biconditional violated")


def _ep_construction(rng: np.random.Generator, n: int, tol: Tolerance) -> TrialResult:
    spec, coords = instances.random_constraint_spec(rng, n)
    verdict = check_ep_construction(spec, coords, tol)
    failed = _failed_names(verdict, True, False)
    return TrialResult(not failed, _required_residual(verdict, True, False),
                       f"d={spec.dim}, false: {', '.join(failed)}" if failed else "")


def _unanimity(rng: np.random.Generator, n: int, tol: Tolerance) -> TrialResult:
    # disagreement raises and is recorded by the trial runner
    report = is_ep(ComplexMatrix(instances.random_operand(rng, n)), tol)
    return TrialResult(True, max(report.residuals) if report.verdict else 0.0)


def _svd_trial(method: str) -> TrialFn:
    def trial(rng: np.random.Generator, n: int, tol: Tolerance) -> TrialResult:
        rows, cols = n, int(rng.integers(1, n + 1)) if rng.random() < 0.5 else n
        if rng.random() < 0.5:
            rows, cols = cols, rows
        m = ComplexMatrix(complex_gaussian(rng, rows, cols))
        scale = max(1.0, frobenius_norm(m))
        residual = max(svd_quality(m, svd(m, method=method))) / scale
        return TrialResult(residual <= SVD_QUALITY_BOUND, residual,
                           f"{rows}x{cols} residual {residual:.2e}")
    return trial


def _penrose(rng: np.random.Generator, n: int, tol: Tolerance) -> TrialResult:
    cols = int(rng.integers(1, n + 1))
    r = int(rng.integers(0, min(n, cols) + 1))
    m = ComplexMatrix(random_low_rank(rng, n, cols, r))
    report = penrose_check(m, pinv(m, tol), tol)
    return TrialResult(report.all_hold, max(report.residuals), f"{n}x{cols} rank {r}")


def _pinv_rank1(rng: np.random.Generator, n: int, tol: Tolerance) -> TrialResult:
    m = ComplexMatrix(random_low_rank(rng, n, int(rng.integers(1, n + 1)), 1))
    closed, general = pinv_rank1(m, tol), pinv(m, tol)
    residual = float(np.linalg.norm(closed.data - general.data))
    return TrialResult(approx_eq(closed, general, tol), residual)


def _pinv_of_ep(rng: np.random.Generator, n: int, tol: Tolerance) -> TrialResult:
    t = instances.fuglede_mp(rng, n)["T"]
    report = is_ep(pinv(t, tol), tol)
    return TrialResult(report.verdict, report.residuals[1])


def _range_gram(rng: np.random.Generator, n: int, tol: Tolerance) -> TrialResult:
    t = ComplexMatrix(random_low_rank(rng, n, n, int(rng.integers(0, n + 1))))
    distance = subspaces.projector_distance(subspaces.from_columns(t, tol),
                                            subspaces.from_columns(t @ t.H, tol))
    return TrialResult(distance <= tol.eq_tol, distance)


def _modular_law(rng: np.random.Generator, n: int, tol: Tolerance) -> TrialResult:
    w = instances.random_subspace(rng, n, int(rng.integers(1, n + 1)))
    inner = ComplexMatrix(w.basis.data @ complex_gaussian(rng, w.dim, int(rng.integers(1, w.dim + 1))))
    u = subspaces.from_columns(inner, tol)
    v = instances.random_subspace(rng, n, int(rng.integers(0, n + 1)))
    left = subspaces.sum(u, subspaces.intersect(v, w, tol), tol)
    right = subspaces.intersect(subspaces.sum(u, v, tol), w, tol)
    distance = subspaces.projector_distance(left, right)
    return TrialResult(distance <= tol.eq_tol, distance, f"dims u={u.dim} v={v.dim} w={w.dim}")


def _constraint_roundtrip(rng: np.random.Generator, n: int, tol: Tolerance) -> TrialResult:
    s = instances.random_subspace(rng, n, int(rng.integers(1, n + 1)))
    back = subspaces.from_constraint_form(subspaces.to_constraint_form(s, tol), tol)
    distance = subspaces.projector_distance(s, back)
    return TrialResult(distance <= tol.eq_tol, distance)


def _rank1(real: bool) -> TrialFn:
    def trial(rng: np.random.Generator, n: int, tol: Tolerance) -> TrialResult:
        if real:
            x = rng.standard_normal(n)
            lam = rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0])
        else:
            x = complex_gaussian(rng, n, 1)[:, 0]
            lam = annulus_values(rng, 1)[0]
        profile = check_rank1_remarks(ComplexMatrix(lam * np.outer(x, x.conj())), tol)
        if real:
            ok = profile.is_rank1 and profile.is_ep and profile.is_real and profile.is_symmetric
            return TrialResult(ok, profile.symmetric_residual)
        ok = profile.is_rank1 and profile.is_ep and profile.is_normal
        return TrialResult(ok, profile.normal_residual)
    return trial


def _unitary_similarity(rng: np.random.Generator, n: int, tol: Tolerance) -> TrialResult:
    t = ComplexMatrix(instances.random_operand(rng, n))
    v = ComplexMatrix(haar_unitary(n, rng))
    before, after = is_ep(t, tol), is_ep(v @ t @ v.H, tol)
    return TrialResult(before.verdict == after.verdict, 0.0,
                       f"EP before={before.verdict} after={after.verdict}")


def _polar(rng: np.random.Generator, n: int, tol: Tolerance) -> TrialResult:
    s = ComplexMatrix(instances.random_operand(rng, n))
    u, p = polar_decompose(s)
    scale = max(1.0, frobenius_norm(s))
    unitary = float(np.linalg.norm(u.H.data @ u.data - np.eye(n)))
    hermitian = float(np.linalg.norm(p.data - p.data.conj().T))
    floor = float(np.min(np.linalg.eigvalsh(p.data)))
    product = float(np.linalg.norm((u @ p).data - s.data))
    residual = max(unitary, hermitian, product / scale)
    ok = (is_hermitian(p, tol) and max(unitary, product / scale) <= tol.eq_tol
          and floor >= -tol.eq_tol * scale)
    return TrialResult(ok, residual, f"min eigenvalue of P {floor:.2e}")


def build_checks() -> List[PropertyCheck]:
    """Every property check, in report order"""
    checks = [
        PropertyCheck("sound:fuglede", soundness("fuglede", instances.fuglede_classic)),
        PropertyCheck("sound:fuglede-mp", soundness("fuglede-mp", instances.fuglede_mp)),
        PropertyCheck("sound:fuglede-adjoint-star", soundness("fuglede-adjoint-star", instances.fuglede_adjoint)),
        PropertyCheck("sound:fuglede-adjoint-mp", soundness("fuglede-adjoint-mp", instances.fuglede_adjoint)),
        PropertyCheck("sound:putnam", soundness("putnam", instances.putnam_classic)),
        PropertyCheck("sound:putnam-mp", soundness("putnam-mp", instances.putnam_mp)),
        PropertyCheck("sound:putnam-adjoint-star", soundness("putnam-adjoint-star", instances.putnam_adjoint)),
        PropertyCheck("sound:putnam-adjoint-mp", soundness("putnam-adjoint-mp", instances.putnam_adjoint)),
        PropertyCheck("sound:squares", soundness("squares", instances.squares)),
        PropertyCheck("sound:two-sided", soundness("two-sided", instances.two_sided)),
        PropertyCheck("sound:two-sided-pair", soundness("two-sided", instances.two_sided_pair)),
        PropertyCheck("sound:product-ep-range-preserving",
                      soundness("product-ep", instances.product_range_preserving, with_observations=True)),
        PropertyCheck("sound:product-ep-commuting",
                      soundness("product-ep", instances.product_commuting, with_observations=True)),
        PropertyCheck("sound:polar-corollary", soundness("polar-corollary", instances.polar_commuting)),
        PropertyCheck("sound:normal-ep",
                      soundness("normal-ep", instances.normal_or_invertible, with_hypotheses=False)),
        PropertyCheck("sound:ep-construction", _ep_construction),
    ]
    checks.extend(
        PropertyCheck(f"consistent:{rule_id}", consistency(rule_id))
        for rule_id, spec in RULES.items()
        if not spec.takes_variant
    )
    checks.extend([
        PropertyCheck("consistent:product-ep-unitary", _product_unitary),
        PropertyCheck("ep-unanimity", _unanimity, dims=(2, UNANIMITY_MAX_DIM), trial_scale=WIDE_TRIAL_SCALE),
        PropertyCheck("svd-quality:lapack", _svd_trial("lapack"), dims=(1, SVD_MAX_DIM),
                      trial_scale=WIDE_TRIAL_SCALE),
        PropertyCheck("svd-quality:jacobi", _svd_trial("jacobi")),
        PropertyCheck("pinv-penrose", _penrose),
        PropertyCheck("pinv-rank1-closed-form", _pinv_rank1),
        PropertyCheck("pinv-of-ep-is-ep", _pinv_of_ep),
        PropertyCheck("range-equals-gram-range", _range_gram),
        PropertyCheck("subspace-modular-law", _modular_law),
        PropertyCheck("constraint-form-roundtrip", _constraint_roundtrip),
        PropertyCheck("rank1-ep-normal", _rank1(real=False)),
        PropertyCheck("rank1-real-ep-symmetric", _rank1(real=True)),
        PropertyCheck("ep-unitary-similarity", _unitary_similarity),
        PropertyCheck("polar-factors", _polar),
    ])
    return checks


def _run_trial(check: PropertyCheck, check_index: int, trial: int, seed: int,
               max_dim: int, tol: Tolerance) -> TrialResult:
    rng = trial_rng(seed, check_index, trial)
    low, high = check.dims or (2, max_dim)
    n = int(rng.integers(low, high + 1))
    result, exc = safe_execute(check.run, rng, n, tol, log_errors=False)
    if exc is not None:
        return TrialResult(False, math.nan, f"n={n}: {type(exc).__name__}: {exc}")
    if result.ok:
        return result
    return TrialResult(False, result.residual, f"n={n}: {result.detail}")


def run_random_suite(trials: int, max_dim: int, seed: int, tol: Tolerance,
                     workers: int = 1, checks: Optional[List[PropertyCheck]] = None) -> SuiteOutcome:
    """
    Run every property check

    Args:
        trials: Trials per theorem check (wide checks scale this up)
        max_dim: Largest random dimension (at least 2)
        seed: Suite seed
        tol: Tolerance for all checks
        workers: Thread pool size
        checks: Subset to run; defaults to build_checks()

    Returns:
        SuiteOutcome with per-check aggregates in check order
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if max_dim < 2:
        raise ValueError("max_dim must be at least 2")
    checks = build_checks() if checks is None else checks
    logger.log_suite_start(trials, max_dim, seed, workers)

    metrics = SweepMetrics()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for index, check in enumerate(checks):
            metrics.register(check.name)
            count = check.trial_count(trials)
            results = pool.map(
                lambda t, c=check, i=index: _run_trial(c, i, t, seed, max_dim, tol),
                range(count),
            )
            for trial, result in enumerate(results):
                metrics.record_trial(check.name, trial, result.ok, result.residual, result.detail)
                if not result.ok:
                    logger.log_violation(check.name, trial, result.detail)

    outcome = SuiteOutcome(seed=seed, trials=trials, max_dim=max_dim, tolerance=tol,
                           checks=metrics.snapshot())
    for item in outcome.checks:
        logger.log_check_summary(item.name, item.trials, item.violations, item.max_residual)
    return outcome
