#!/usr/bin/env python3
"""
Worked-example catalog
Counterexamples and worked examples encoded as finite blocks (operators that
act as the identity beyond the block are cut to it) together with the
booleans each checker must reproduce
"""

from typing import Dict, List, Mapping, Optional, Sequence

from ..core.error_handling import CatalogMismatchError, PostconditionError
from ..core.logger import VerificationLogger
from ..models.matrix import DEFAULT_TOLERANCE, ComplexMatrix, Tolerance
from ..models.subspace import ConstraintSpec
from ..models.verdicts import (
    CaseCheck,
    CaseOutcome,
    CatalogOutcome,
    CounterexampleCase,
    TheoremVerdict,
    flatten_expectations,
)
from .core_linalg import approx_eq
from .ep import check_ep_construction, ep_construct
from .fuglede import PRODUCT_COMMUTATION, PRODUCT_RANGE_NULL, RULES, run_rule

logger = VerificationLogger("catalog")

CONSTRUCTION_RULE = "ep-construction"


def _m(rows: Sequence[Sequence[complex]]) -> ComplexMatrix:
    return ComplexMatrix.from_rows(rows)


# operators shared by several cases
_T_COMMUTING = [[1, -1, 0], [1, 0, 1], [2, -1, 1]]
_A_COMMUTING = [[0, 1, 0], [-1, 1, -1], [-2, 1, 0]]
_T_UPPER = [[1, 0, 1], [0, 0, 0], [0, 0, 1]]
_S_SHEAR = [[1, 1, 0], [0, 1, 0], [0, 0, 0]]


def _check(rule: str, expected: Mapping[str, bool], operators: Sequence[str],
           variant: Optional[str] = None) -> CaseCheck:
    """Bind every operand the rule reads to the case operator of the same name"""
    if rule == CONSTRUCTION_RULE:
        return CaseCheck(rule, {"X": "X"}, dict(expected), variant)
    spec = RULES[rule]
    names = [name for _, name in spec.operands + spec.optional if name in operators]
    return CaseCheck(rule, {name: name for name in names}, dict(expected), variant)


def catalog() -> List[CounterexampleCase]:
    """The encoded worked examples, in catalog order"""
    cases: List[CounterexampleCase] = []

    cases.append(CounterexampleCase(
        case_id="ep-not-normal",
        source="normal-ep: EP matrix that is not normal, N(T) = N(T*) = span{(1,-1,-1)}",
        block_size=3,
        operators={"T": _m([[1, 1, 0], [2, 1, 1], [-1, 0, -1]])},
        checks=(
            _check("normal-ep", {"T normal": False, "T EP": True, "T invertible": False}, ("T",)),
        ),
    ))

    cases.append(CounterexampleCase(
        case_id="ep-prescribed-range",
        source="ep-construction: EP matrix with range W = {(x1, x1 + x3, x3)}",
        block_size=3,
        operators={"X": _m([[1, 1j], [1, -1]])},
        checks=(
            _check(CONSTRUCTION_RULE, {
                "free coordinates invertible": True,
                "T EP": True,
                "R(T)=W": True,
                "R(T*)=W": True,
                "T normal": False,
            }, ("X",)),
        ),
        note="basis vectors (1, 1+i, i) and (1, 0, -1); the printed image (2, 1+i, 1) "
             "does not lie in W and is read as (2, 1+i, i-1), the middle column of the construction",
        constraint=ConstraintSpec.build(3, (0, 2), {1: (1, 1)}),
        expected_operator=_m([[1, 2, 1], [1 + 1j, 1 + 1j, 0], [1j, 1j - 1, -1]]),
    ))

    ops = ("A", "T")
    cases.append(CounterexampleCase(
        case_id="commuting-ep-non-normal",
        source="fuglede, fuglede-mp, fuglede-adjoint-mp: AT = TA with T EP but not normal; "
               "AT* differs from T*A while AT† = T†A",
        block_size=3,
        operators={"T": _m(_T_COMMUTING), "A": _m(_A_COMMUTING)},
        checks=(
            _check("fuglede", {"N normal": False, "AN=NA": True, "AN*=N*A": False}, ops),
            _check("fuglede-mp", {"T EP": True, "AT=TA": True, "AT†=T†A": True}, ops),
            _check("fuglede-adjoint-mp", {
                "T EP": True, "AT=TA": True, "AT†T*=T†T*A": False, "AT*=T*A": False,
            }, ops),
        ),
    ))

    cases.append(CounterexampleCase(
        case_id="commuting-non-ep",
        source="fuglede-mp: A = T = [[1,1],[2,2]]; AT = TA but AT† differs from T†A",
        block_size=2,
        operators={"T": _m([[1, 1], [2, 2]]), "A": _m([[1, 1], [2, 2]])},
        checks=(
            _check("fuglede-mp", {"T EP": False, "AT=TA": True, "AT†=T†A": False}, ops),
        ),
    ))

    cases.append(CounterexampleCase(
        case_id="adjoint-star-product-fails",
        source="fuglede-adjoint-star: T EP and AT = TA but AT*T differs from T*TA, "
               "and AT* differs from T*A",
        block_size=3,
        operators={"T": _m(_T_UPPER), "A": _m([[1, 0, 2], [0, -1, 0], [0, 0, 1]])},
        checks=(
            _check("fuglede-adjoint-star", {
                "T EP": True, "AT=TA": True, "AT*T=T*TA": False, "AT*=T*A": False,
            }, ops),
        ),
    ))

    ops = ("A", "T", "S")
    cases.append(CounterexampleCase(
        case_id="intertwining-ep-pair",
        source="putnam, putnam-mp, putnam-adjoint-star, putnam-adjoint-mp: AT = SA with T, S EP "
               "and not normal; AT* differs from S*A while AT† = S†A",
        block_size=3,
        operators={"T": _m(_T_UPPER), "S": _m(_S_SHEAR), "A": _m([[1, 0, -1], [0, 0, 1], [0, 2, 0]])},
        checks=(
            _check("putnam", {"N normal": False, "M normal": False, "AN=MA": True, "AN*=M*A": False}, ops),
            _check("putnam-mp", {"T EP": True, "S EP": True, "AT=SA": True, "AT†=S†A": True}, ops),
            _check("putnam-adjoint-star", {
                "T EP": True, "S EP": True, "AT=SA": True, "AT*T=S*SA": False, "AT*=S*A": False,
            }, ops),
            _check("putnam-adjoint-mp", {
                "T EP": True, "S EP": True, "AT=SA": True, "AT†T*=S†S*A": False, "AT*=S*A": False,
            }, ops),
        ),
        note="S(x) read as (x1 + x2, x2, 0, x4, ...) where the printed formula has an empty slot",
    ))

    cases.append(CounterexampleCase(
        case_id="intertwining-non-ep",
        source="putnam-mp: AT = SA with S not EP; AT† differs from S†A",
        block_size=3,
        operators={"T": _m(_T_UPPER), "S": _m([[1, 1, 0], [0, 0, 0], [0, 0, 0]]),
                   "A": _m([[0, 1, 2], [0, -1, 0], [0, -1, 0]])},
        checks=(
            _check("putnam-mp", {"T EP": True, "S EP": False, "AT=SA": True, "AT†=S†A": False}, ops),
        ),
    ))

    ops = ("A", "B", "T", "S")
    cases.append(CounterexampleCase(
        case_id="squares-non-ep",
        source="squares: AT = SB and AT² = S²B with T, S not EP; AT† differs from S†B",
        block_size=2,
        operators={"A": _m([[0, 1], [1, 0]]), "B": ComplexMatrix.identity(2),
                   "T": _m([[1, 1], [-1, -1]]), "S": _m([[-1, -1], [1, 1]])},
        checks=(
            _check("squares", {
                "T EP": False, "S EP": False, "AT=SB": True, "AT²=S²B": True, "AT†=S†B": False,
            }, ops),
        ),
    ))

    cases.append(CounterexampleCase(
        case_id="squares-second-power-fails",
        source="squares: T, S EP with AT = SB but AT² differs from S²B, and AT† differs from S†B",
        block_size=3,
        operators={"T": _m(_T_COMMUTING), "S": _m(_S_SHEAR),
                   "A": _m([[1, 2, -1], [-1, -1, 1], [2, 2, -2]]),
                   "B": _m([[1, 0, 1], [0, 0, 0], [1, 1, 0]])},
        checks=(
            _check("squares", {
                "T EP": True, "S EP": True, "AT=SB": True, "AT²=S²B": False, "AT†=S†B": False,
            }, ops),
        ),
        note="S is taken with a zero (3,3) entry; with a one there AT = SB fails on the third row",
    ))

    ops = ("S", "T")
    cases.append(CounterexampleCase(
        case_id="product-not-ep",
        source="product-ep: S, T EP with ST and TS not EP; R(ST) differs from R(S)∩R(T)",
        block_size=2,
        operators={"S": _m([[1, 1], [1, 1]]), "T": ComplexMatrix.diag([0, 1])},
        checks=(
            _check("product-ep", {
                "S EP": True, "T EP": True, "(ST)†=T†S†": False,
                "ST EP": False, "TS EP": False,
                "R(ST)=R(S)∩R(T)": False, "N(ST)=N(S)+N(T)": False,
                PRODUCT_RANGE_NULL: True, PRODUCT_COMMUTATION: True,
            }, ops),
        ),
    ))

    cases.append(CounterexampleCase(
        case_id="product-one-sided-ep",
        source="product-ep: S, T EP with ST EP but TS not EP",
        block_size=2,
        operators={"S": _m([[1, 1], [0, 1]]), "T": ComplexMatrix.diag([1, 0])},
        checks=(
            _check("product-ep", {
                "S EP": True, "T EP": True, "(ST)†=T†S†": False,
                "ST EP": True, "TS EP": False,
                "R(ST)=R(S)∩R(T)": True, "N(ST)=N(S)+N(T)": True,
                "S†ST=TSS†": True, "STT†=T†TS": False,
                PRODUCT_RANGE_NULL: True, PRODUCT_COMMUTATION: True,
            }, ops),
        ),
    ))

    return cases


def _run_check(case: CounterexampleCase, check: CaseCheck, tol: Tolerance) -> TheoremVerdict:
    operands = {param: case.operators[name] for param, name in check.operands.items()}
    if check.rule == CONSTRUCTION_RULE:
        return check_ep_construction(case.constraint, operands["X"], tol)
    return run_rule(check.rule, operands, tol, variant=check.variant)


def _compare(check: CaseCheck, verdict: TheoremVerdict) -> List[str]:
    observed = flatten_expectations(verdict)
    mismatches = []
    for name, expected in check.expected.items():
        if observed.get(name) is not expected:
            mismatches.append(f"{check.rule}: {name}")
    return mismatches


def _constructed_operator_matches(case: CounterexampleCase, tol: Tolerance) -> bool:
    try:
        t = ep_construct(case.constraint, case.operators["X"], tol)
    except PostconditionError:
        return False
    return approx_eq(t, case.expected_operator, tol)


def run_case(case: CounterexampleCase, tol: Tolerance = DEFAULT_TOLERANCE) -> CaseOutcome:
    """Run every check of one case and collect the fields that differ from the expectation"""
    verdicts: List[TheoremVerdict] = []
    mismatches: List[str] = []
    for check in case.checks:
        verdict = _run_check(case, check, tol)
        verdicts.append(verdict)
        mismatches.extend(_compare(check, verdict))
        if not verdict.consistent:
            mismatches.append(f"{check.rule}: consistent")
    if case.expected_operator is not None and not _constructed_operator_matches(case, tol):
        mismatches.append("constructed operator")
    outcome = CaseOutcome(case.case_id, case.source, verdicts, mismatches)
    logger.log_case_result(case.case_id, outcome.passed, mismatches)
    return outcome


def run_catalog(tol: Tolerance = DEFAULT_TOLERANCE, strict: bool = True) -> CatalogOutcome:
    """
    Reproduce every catalog case

    Args:
        tol: Tolerance used by all checkers
        strict: Raise on the first failing case instead of returning it

    Returns:
        CatalogOutcome with one CaseOutcome per case

    Raises:
        CatalogMismatchError: strict mode, naming the case and the first differing field
    """
    outcomes: List[CaseOutcome] = []
    for case in catalog():
        outcome = run_case(case, tol)
        outcomes.append(outcome)
        if strict and not outcome.passed:
            field = outcome.mismatches[0] if outcome.mismatches else "consistent"
            raise CatalogMismatchError(case.case_id, field, outcome)
    result = CatalogOutcome(outcomes)
    logger.log_catalog_done(len(outcomes), len(result.failed_cases))
    return result


def case_index() -> Dict[str, CounterexampleCase]:
    return {case.case_id: case for case in catalog()}
