#!/usr/bin/env python3
"""
Fuglede-Putnam type theorem checkers
Classic Fuglede and Putnam statements, their Moore-Penrose and adjoint
variants for EP operators, the squared and two-sided forms, polar
decomposition, the product-EP criteria and the rule registry used by the
command line and the catalog
"""

from dataclasses import dataclass
from enum import Enum
from functools import partial
from typing import Callable, Dict, Mapping, Optional, Tuple

from ..core.error_handling import MissingOperandError, UnknownRuleError, UnknownVariantError
from ..core.logger import VerificationLogger
from ..models.matrix import DEFAULT_TOLERANCE, ComplexMatrix, Tolerance
from ..models.verdicts import Evidence, Implication, TheoremVerdict
from . import subspaces
from .core_linalg import equality_residual, require_same_square, svd, truncated_product
from .ep import check_normal_implies_ep, ep_evidence, normal_evidence
from .pseudoinverse import pinv

logger = VerificationLogger("fuglede")


class AdjointVariant(str, Enum):
    """Extra hypothesis of the adjoint-conclusion theorems"""
    STAR_PRODUCT = "star_product"
    MP_STAR = "mp_star"

    @classmethod
    def parse(cls, value) -> "AdjointVariant":
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            raise UnknownVariantError(str(value), tuple(v.value for v in cls)) from None


def relation(lhs: ComplexMatrix, rhs: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> Evidence:
    """lhs = rhs under the hybrid Frobenius criterion"""
    residual, scale = equality_residual(lhs, rhs)
    return Evidence(residual <= tol.eq_tol * scale, residual)


def check_fuglede_classic(a: ComplexMatrix, n: ComplexMatrix,
                          tol: Tolerance = DEFAULT_TOLERANCE) -> TheoremVerdict:
    """N normal and AN = NA ⇒ AN* = N*A"""
    require_same_square(("A", a), ("N", n))
    return TheoremVerdict(
        theorem_id="fuglede",
        hypotheses={
            "N normal": normal_evidence(n, tol),
            "AN=NA": relation(a @ n, n @ a, tol),
        },
        conclusions={"AN*=N*A": relation(a @ n.H, n.H @ a, tol)},
    )


def check_fuglede_mp(a: ComplexMatrix, t: ComplexMatrix,
                     tol: Tolerance = DEFAULT_TOLERANCE) -> TheoremVerdict:
    """T EP and AT = TA ⇒ AT† = T†A"""
    require_same_square(("A", a), ("T", t))
    tp = pinv(t, tol)
    return TheoremVerdict(
        theorem_id="fuglede-mp",
        hypotheses={
            "T EP": ep_evidence(t, tol),
            "AT=TA": relation(a @ t, t @ a, tol),
        },
        conclusions={"AT†=T†A": relation(a @ tp, tp @ a, tol)},
    )


def check_fuglede_adjoint(a: ComplexMatrix, t: ComplexMatrix, variant,
                          tol: Tolerance = DEFAULT_TOLERANCE) -> TheoremVerdict:
    """
    T EP, AT = TA and one of
      star_product: AT*T = T*TA
      mp_star:      AT†T* = T†T*A
    ⇒ AT* = T*A
    """
    variant = AdjointVariant.parse(variant)
    require_same_square(("A", a), ("T", t))
    ts = t.H
    if variant is AdjointVariant.STAR_PRODUCT:
        extra_name, extra = "AT*T=T*TA", relation(a @ ts @ t, ts @ t @ a, tol)
    else:
        tp = pinv(t, tol)
        extra_name, extra = "AT†T*=T†T*A", relation(a @ tp @ ts, tp @ ts @ a, tol)
    return TheoremVerdict(
        theorem_id=f"fuglede-adjoint:{variant.value}",
        hypotheses={
            "T EP": ep_evidence(t, tol),
            "AT=TA": relation(a @ t, t @ a, tol),
            extra_name: extra,
        },
        conclusions={"AT*=T*A": relation(a @ ts, ts @ a, tol)},
    )


def check_putnam_classic(a: ComplexMatrix, n: ComplexMatrix, m: ComplexMatrix,
                         tol: Tolerance = DEFAULT_TOLERANCE) -> TheoremVerdict:
    """N, M normal and AN = MA ⇒ AN* = M*A"""
    require_same_square(("A", a), ("N", n), ("M", m))
    return TheoremVerdict(
        theorem_id="putnam",
        hypotheses={
            "N normal": normal_evidence(n, tol),
            "M normal": normal_evidence(m, tol),
            "AN=MA": relation(a @ n, m @ a, tol),
        },
        conclusions={"AN*=M*A": relation(a @ n.H, m.H @ a, tol)},
    )


def check_putnam_mp(a: ComplexMatrix, t: ComplexMatrix, s: ComplexMatrix,
                    tol: Tolerance = DEFAULT_TOLERANCE) -> TheoremVerdict:
    """T, S EP and AT = SA ⇒ AT† = S†A"""
    require_same_square(("A", a), ("T", t), ("S", s))
    tp, sp = pinv(t, tol), pinv(s, tol)
    return TheoremVerdict(
        theorem_id="putnam-mp",
        hypotheses={
            "T EP": ep_evidence(t, tol),
            "S EP": ep_evidence(s, tol),
            "AT=SA": relation(a @ t, s @ a, tol),
        },
        conclusions={"AT†=S†A": relation(a @ tp, sp @ a, tol)},
    )


def check_putnam_adjoint(a: ComplexMatrix, t: ComplexMatrix, s: ComplexMatrix, variant,
                         tol: Tolerance = DEFAULT_TOLERANCE) -> TheoremVerdict:
    """
    T, S EP, AT = SA and one of
      star_product: AT*T = S*SA
      mp_star:      AT†T* = S†S*A
    ⇒ AT* = S*A
    """
    variant = AdjointVariant.parse(variant)
    require_same_square(("A", a), ("T", t), ("S", s))
    ts, ss = t.H, s.H
    if variant is AdjointVariant.STAR_PRODUCT:
        extra_name, extra = "AT*T=S*SA", relation(a @ ts @ t, ss @ s @ a, tol)
    else:
        tp, sp = pinv(t, tol), pinv(s, tol)
        extra_name, extra = "AT†T*=S†S*A", relation(a @ tp @ ts, sp @ ss @ a, tol)
    return TheoremVerdict(
        theorem_id=f"putnam-adjoint:{variant.value}",
        hypotheses={
            "T EP": ep_evidence(t, tol),
            "S EP": ep_evidence(s, tol),
            "AT=SA": relation(a @ t, s @ a, tol),
            extra_name: extra,
        },
        conclusions={"AT*=S*A": relation(a @ ts, ss @ a, tol)},
    )


def check_squares(a: ComplexMatrix, b: ComplexMatrix, t: ComplexMatrix, s: ComplexMatrix,
                  tol: Tolerance = DEFAULT_TOLERANCE) -> TheoremVerdict:
    """T, S EP, AT = SB and AT² = S²B ⇒ AT† = S†B"""
    require_same_square(("A", a), ("B", b), ("T", t), ("S", s))
    tp, sp = pinv(t, tol), pinv(s, tol)
    return TheoremVerdict(
        theorem_id="squares",
        hypotheses={
            "T EP": ep_evidence(t, tol),
            "S EP": ep_evidence(s, tol),
            "AT=SB": relation(a @ t, s @ b, tol),
            "AT²=S²B": relation(a @ t @ t, s @ s @ b, tol),
        },
        conclusions={"AT†=S†B": relation(a @ tp, sp @ b, tol)},
    )


def check_two_sided(a: ComplexMatrix, b: ComplexMatrix, t: ComplexMatrix,
                    s: Optional[ComplexMatrix] = None,
                    tol: Tolerance = DEFAULT_TOLERANCE) -> TheoremVerdict:
    """
    Without S: T EP, AT = TB and BT = TA ⇒ AT† = T†B and BT† = T†A
    With S:    T, S EP, AT = SB and BT = SA ⇒ AT† = S†B and BT† = S†A
    """
    if s is None:
        require_same_square(("A", a), ("B", b), ("T", t))
        tp = pinv(t, tol)
        return TheoremVerdict(
            theorem_id="two-sided",
            hypotheses={
                "T EP": ep_evidence(t, tol),
                "AT=TB": relation(a @ t, t @ b, tol),
                "BT=TA": relation(b @ t, t @ a, tol),
            },
            conclusions={
                "AT†=T†B": relation(a @ tp, tp @ b, tol),
                "BT†=T†A": relation(b @ tp, tp @ a, tol),
            },
        )
    require_same_square(("A", a), ("B", b), ("T", t), ("S", s))
    tp, sp = pinv(t, tol), pinv(s, tol)
    return TheoremVerdict(
        theorem_id="two-sided-pair",
        hypotheses={
            "T EP": ep_evidence(t, tol),
            "S EP": ep_evidence(s, tol),
            "AT=SB": relation(a @ t, s @ b, tol),
            "BT=SA": relation(b @ t, s @ a, tol),
        },
        conclusions={
            "AT†=S†B": relation(a @ tp, sp @ b, tol),
            "BT†=S†A": relation(b @ tp, sp @ a, tol),
        },
    )


def polar_decompose(s: ComplexMatrix) -> Tuple[ComplexMatrix, ComplexMatrix]:
    """
    S = U·P with U = W·V* unitary and P = V·Σ·V* Hermitian PSD, from the
    phase-normalised SVD S = W·Σ·V*
    """
    require_same_square(("S", s))
    result = svd(s)
    w, v = result.left.data, result.right.data
    sigma = result.singular_values
    u = w @ v.conj().T
    p = (v * sigma) @ v.conj().T
    # exact Hermitian symmetry of the positive factor
    p = 0.5 * (p + p.conj().T)
    return ComplexMatrix(u), ComplexMatrix(p)


def reverse_order_law(s: ComplexMatrix, t: ComplexMatrix, tol: Tolerance = DEFAULT_TOLERANCE) -> Evidence:
    """(ST)† = T†S†, with ST truncated at the operands' rank cutoff"""
    return relation(pinv(truncated_product(s, t, tol), tol), pinv(t, tol) @ pinv(s, tol), tol)


def _subspace_evidence(s1, s2, tol: Tolerance) -> Evidence:
    distance = subspaces.projector_distance(s1, s2)
    return Evidence(distance <= tol.eq_tol, distance)


def _iff(left: bool, right: bool, *parts: Evidence) -> Evidence:
    return Evidence(left == right, max((p.residual for p in parts), default=0.0))


PRODUCT_RANGE_NULL = "ST EP ⇔ R(ST)=R(S)∩R(T) and N(ST)=N(S)+N(T)"
PRODUCT_COMMUTATION = "ST and TS EP ⇔ S†ST=TSS† and STT†=T†TS"


def check_product_ep(s: ComplexMatrix, t: ComplexMatrix,
                     tol: Tolerance = DEFAULT_TOLERANCE) -> TheoremVerdict:
    """
    Product criteria for EP S, T

      S, T EP ⇒ (ST EP ⇔ R(ST) = R(S)∩R(T) and N(ST) = N(S)+N(T))
      S, T EP and (ST)† = T†S† ⇒ (ST and TS EP ⇔ S†ST = TSS† and STT† = T†TS)
    """
    require_same_square(("S", s), ("T", t))
    st, ts = truncated_product(s, t, tol), truncated_product(t, s, tol)
    sp, tp = pinv(s, tol), pinv(t, tol)

    st_ep = ep_evidence(st, tol)
    ts_ep = ep_evidence(ts, tol)
    range_cond = _subspace_evidence(
        subspaces.from_columns(st, tol),
        subspaces.intersect(subspaces.from_columns(s, tol), subspaces.from_columns(t, tol), tol),
        tol,
    )
    null_cond = _subspace_evidence(
        subspaces.nullspace(st, tol),
        subspaces.sum(subspaces.nullspace(s, tol), subspaces.nullspace(t, tol), tol),
        tol,
    )
    comm_left = relation(sp @ s @ t, t @ s @ sp, tol)
    comm_right = relation(s @ t @ tp, tp @ t @ s, tol)

    both_ep = st_ep.holds and ts_ep.holds
    return TheoremVerdict(
        theorem_id="product-ep",
        hypotheses={
            "S EP": ep_evidence(s, tol),
            "T EP": ep_evidence(t, tol),
            "(ST)†=T†S†": reverse_order_law(s, t, tol),
        },
        conclusions={
            PRODUCT_RANGE_NULL: _iff(st_ep.holds, range_cond.holds and null_cond.holds,
                                     range_cond, null_cond),
            PRODUCT_COMMUTATION: _iff(both_ep, comm_left.holds and comm_right.holds,
                                      comm_left, comm_right),
        },
        observations={
            "ST EP": st_ep,
            "TS EP": ts_ep,
            "R(ST)=R(S)∩R(T)": range_cond,
            "N(ST)=N(S)+N(T)": null_cond,
            "S†ST=TSS†": comm_left,
            "STT†=T†TS": comm_right,
        },
        implications=(
            Implication("product-range-null", ("S EP", "T EP"), (PRODUCT_RANGE_NULL,)),
            Implication("reverse-order-ep", ("S EP", "T EP", "(ST)†=T†S†"), (PRODUCT_COMMUTATION,)),
        ),
    )


def check_polar_corollary(s: ComplexMatrix, t: ComplexMatrix,
                          tol: Tolerance = DEFAULT_TOLERANCE) -> TheoremVerdict:
    """
    S = UP, (ST)† = T†S†, TU EP and PTU = TUP ⇒ ST and TS EP

    EP-ness of S and T is reported but not assumed.
    """
    require_same_square(("S", s), ("T", t))
    u, p = polar_decompose(s)
    tu = t @ u
    return TheoremVerdict(
        theorem_id="polar-corollary",
        hypotheses={
            "(ST)†=T†S†": reverse_order_law(s, t, tol),
            "TU EP": ep_evidence(tu, tol),
            "PTU=TUP": relation(p @ tu, tu @ p, tol),
        },
        conclusions={
            "ST EP": ep_evidence(truncated_product(s, t, tol), tol),
            "TS EP": ep_evidence(truncated_product(t, s, tol), tol),
        },
        observations={
            "S EP": ep_evidence(s, tol),
            "T EP": ep_evidence(t, tol),
        },
    )


@dataclass(frozen=True)
class RuleSpec:
    """
    Registry entry: checker plus the operands it reads

    ``operands`` pairs each checker parameter with the operand name used on
    the command line (--A, --T, --S, --B) and in catalog cases.
    """
    rule_id: str
    checker: Callable[..., TheoremVerdict]
    operands: Tuple[Tuple[str, str], ...]
    optional: Tuple[Tuple[str, str], ...] = ()
    takes_variant: bool = False
    description: str = ""


RULES: Dict[str, RuleSpec] = {
    spec.rule_id: spec
    for spec in (
        RuleSpec("fuglede", check_fuglede_classic, (("a", "A"), ("n", "T")),
                 description="N:=T normal, AN=NA ⇒ AN*=N*A"),
        RuleSpec("fuglede-mp", check_fuglede_mp, (("a", "A"), ("t", "T")),
                 description="T EP, AT=TA ⇒ AT†=T†A"),
        RuleSpec("fuglede-adjoint", check_fuglede_adjoint, (("a", "A"), ("t", "T")),
                 takes_variant=True, description="T EP, AT=TA, variant condition ⇒ AT*=T*A"),
        RuleSpec("fuglede-adjoint-star",
                 partial(check_fuglede_adjoint, variant=AdjointVariant.STAR_PRODUCT),
                 (("a", "A"), ("t", "T")), description="T EP, AT=TA, AT*T=T*TA ⇒ AT*=T*A"),
        RuleSpec("fuglede-adjoint-mp",
                 partial(check_fuglede_adjoint, variant=AdjointVariant.MP_STAR),
                 (("a", "A"), ("t", "T")), description="T EP, AT=TA, AT†T*=T†T*A ⇒ AT*=T*A"),
        RuleSpec("putnam", check_putnam_classic, (("a", "A"), ("n", "T"), ("m", "S")),
                 description="N:=T, M:=S normal, AN=MA ⇒ AN*=M*A"),
        RuleSpec("putnam-mp", check_putnam_mp, (("a", "A"), ("t", "T"), ("s", "S")),
                 description="T, S EP, AT=SA ⇒ AT†=S†A"),
        RuleSpec("putnam-adjoint", check_putnam_adjoint, (("a", "A"), ("t", "T"), ("s", "S")),
                 takes_variant=True, description="T, S EP, AT=SA, variant condition ⇒ AT*=S*A"),
        RuleSpec("putnam-adjoint-star",
                 partial(check_putnam_adjoint, variant=AdjointVariant.STAR_PRODUCT),
                 (("a", "A"), ("t", "T"), ("s", "S")),
                 description="T, S EP, AT=SA, AT*T=S*SA ⇒ AT*=S*A"),
        RuleSpec("putnam-adjoint-mp",
                 partial(check_putnam_adjoint, variant=AdjointVariant.MP_STAR),
                 (("a", "A"), ("t", "T"), ("s", "S")),
                 description="T, S EP, AT=SA, AT†T*=S†S*A ⇒ AT*=S*A"),
        RuleSpec("squares", check_squares, (("a", "A"), ("b", "B"), ("t", "T"), ("s", "S")),
                 description="T, S EP, AT=SB, AT²=S²B ⇒ AT†=S†B"),
        RuleSpec("two-sided", check_two_sided, (("a", "A"), ("b", "B"), ("t", "T")),
                 optional=(("s", "S"),),
                 description="AT=SB, BT=SA (S defaults to T) ⇒ AT†=S†B, BT†=S†A"),
        RuleSpec("product-ep", check_product_ep, (("s", "S"), ("t", "T")),
                 description="product criteria for EP S, T"),
        RuleSpec("polar-corollary", check_polar_corollary, (("s", "S"), ("t", "T")),
                 description="S=UP: TU EP, PTU=TUP ⇒ ST, TS EP"),
        RuleSpec("normal-ep", check_normal_implies_ep, (("t", "T"),),
                 description="normal or invertible ⇒ EP"),
    )
}


def run_rule(rule_id: str, operands: Mapping[str, ComplexMatrix],
             tol: Tolerance = DEFAULT_TOLERANCE, variant: Optional[str] = None) -> TheoremVerdict:
    """
    Dispatch a registered checker

    Args:
        rule_id: Registry key
        operands: Operand name (A, B, T, S) → matrix
        tol: Tolerance
        variant: Adjoint variant for the rules that take one

    Returns:
        TheoremVerdict of the checker
    """
    spec = RULES.get(rule_id)
    if spec is None:
        raise UnknownRuleError(rule_id, tuple(RULES))
    kwargs = {}
    for param, name in spec.operands:
        if name not in operands:
            raise MissingOperandError(rule_id, name)
        kwargs[param] = operands[name]
    for param, name in spec.optional:
        if name in operands:
            kwargs[param] = operands[name]
    if spec.takes_variant:
        if variant is None:
            raise UnknownVariantError("<missing>", tuple(v.value for v in AdjointVariant))
        kwargs["variant"] = variant

    dim = next(iter(kwargs.values())).rows
    logger.log_check_start(rule_id, dim)
    verdict = spec.checker(tol=tol, **kwargs)
    logger.log_verdict(verdict.theorem_id, verdict.hypotheses_hold, verdict.conclusions_hold,
                       verdict.consistent)
    return verdict
