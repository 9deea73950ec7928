#!/usr/bin/env python3
"""
Error Handling Module
Exception hierarchy for eplab with error context and CLI exit codes

Features:
- Custom exception hierarchy (input, dimension, numerical, pre/postcondition, catalog, theorem)
- Error context preservation
- Exit-code mapping used by the command line
- safe_execute for isolating property-suite trials
"""

import time
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Any, Callable, Optional, Tuple, TypeVar

import structlog

T = TypeVar("T")

logger = structlog.get_logger("error_handling")


class ExitCode(IntEnum):
    """Process exit codes of the command line"""
    PASS = 0
    CATALOG_MISMATCH = 1
    IO_ERROR = 2
    PREDICATE_NEGATIVE = 3
    POSTCONDITION_FAILURE = 4
    THEOREM_VIOLATION = 5


class ErrorSeverity(Enum):
    """Error severity levels"""
    LOW = "low"           # Bad input, caller can fix it
    MEDIUM = "medium"     # Numerical trouble on a legal input
    HIGH = "high"         # Internal postcondition broken
    CRITICAL = "critical" # A theorem appears violated


class ErrorCategory(Enum):
    """Error categories"""
    INPUT = "input"                 # Unreadable or malformed documents
    DIMENSION = "dimension"         # Incompatible shapes
    NUMERICAL = "numerical"         # Non-finite entries, SVD convergence
    PRECONDITION = "precondition"   # Rank, basis, variant, rule requirements
    POSTCONDITION = "postcondition" # Results failing their own verification
    CATALOG = "catalog"             # Catalog example not reproduced
    THEOREM = "theorem"             # Hypotheses hold but a conclusion fails
    VALIDATION = "validation"       # Argument validation


@dataclass
class ErrorContext:
    """
    Error context for logging and CLI rendering
    """
    error_type: str
    error_message: str
    category: ErrorCategory
    severity: ErrorSeverity
    timestamp: float
    exit_code: ExitCode
    technical_details: Optional[str] = None
    suggested_action: Optional[str] = None


class BaseEplabError(Exception):
    """
    Base exception class with context and exit code
    """
    exit_code: ExitCode = ExitCode.IO_ERROR

    def __init__(
        self,
        message: str,
        category: ErrorCategory = ErrorCategory.VALIDATION,
        severity: ErrorSeverity = ErrorSeverity.LOW,
        technical_details: Optional[str] = None,
        suggested_action: Optional[str] = None,
    ):
        super().__init__(message)
        self.message = message
        self.context = ErrorContext(
            error_type=self.__class__.__name__,
            error_message=message,
            category=category,
            severity=severity,
            timestamp=time.time(),
            exit_code=self.exit_code,
            technical_details=technical_details,
            suggested_action=suggested_action,
        )


class DocumentParseError(BaseEplabError):
    """Matrix or spec file cannot be read or does not validate"""
    def __init__(self, message: str, path: Optional[str] = None, **kwargs):
        super().__init__(
            message,
            category=ErrorCategory.INPUT,
            technical_details=f"File: {path}" if path else None,
            suggested_action="Check the file against the documented JSON layout",
            **kwargs,
        )
        self.path = path


class DimensionMismatchError(BaseEplabError):
    """Operands have incompatible shapes"""
    def __init__(self, message: str, shapes: Tuple[Any, ...] = (), **kwargs):
        super().__init__(
            message,
            category=ErrorCategory.DIMENSION,
            technical_details=f"Shapes: {shapes}" if shapes else None,
            **kwargs,
        )
        self.shapes = shapes


class NonSquareError(DimensionMismatchError):
    """Operation requires a square matrix"""


class NonFiniteEntryError(BaseEplabError):
    """Matrix contains NaN or Inf"""
    def __init__(self, message: str = "matrix entries must be finite", **kwargs):
        super().__init__(message, category=ErrorCategory.NUMERICAL, **kwargs)


class SvdConvergenceError(BaseEplabError):
    """SVD did not converge within its iteration budget"""
    def __init__(self, message: str, iterations: Optional[int] = None, **kwargs):
        super().__init__(
            message,
            category=ErrorCategory.NUMERICAL,
            severity=ErrorSeverity.MEDIUM,
            technical_details=f"Iterations: {iterations}" if iterations is not None else None,
            suggested_action="Retry with the other SVD method (EPLAB_SVD_METHOD)",
            **kwargs,
        )
        self.iterations = iterations


class RankNotOneError(BaseEplabError):
    """Rank-1 closed form requested for a matrix of another rank"""
    def __init__(self, rank: int, **kwargs):
        super().__init__(f"matrix has numerical rank {rank}, expected 1",
                         category=ErrorCategory.PRECONDITION, **kwargs)
        self.rank = rank


class RankOutOfRangeError(BaseEplabError):
    """Requested rank outside 0..n"""
    def __init__(self, n: int, r: int, **kwargs):
        super().__init__(f"rank {r} is outside 0..{n}", category=ErrorCategory.PRECONDITION, **kwargs)


class DegenerateBasisError(BaseEplabError):
    """Pivoting could not find d independent coordinates"""
    def __init__(self, message: str, **kwargs):
        super().__init__(message, category=ErrorCategory.PRECONDITION, **kwargs)


class InvalidConstraintSpecError(BaseEplabError):
    """Constraint form is not a valid partition with matching coefficient vectors"""
    def __init__(self, message: str, **kwargs):
        super().__init__(message, category=ErrorCategory.PRECONDITION, **kwargs)


class SingularFreeCoordinatesError(BaseEplabError):
    """Free-coordinate matrix of the basis is not invertible"""
    def __init__(self, message: str = "free-coordinate matrix is singular", **kwargs):
        super().__init__(message, category=ErrorCategory.PRECONDITION, **kwargs)


class UnknownVariantError(BaseEplabError):
    """Adjoint-condition variant is not recognised"""
    def __init__(self, variant: str, allowed: Tuple[str, ...] = (), **kwargs):
        super().__init__(
            f"unknown variant {variant!r}",
            category=ErrorCategory.PRECONDITION,
            suggested_action=f"Use one of: {', '.join(allowed)}" if allowed else None,
            **kwargs,
        )


class UnknownRuleError(BaseEplabError):
    """Rule id is not in the checker registry"""
    def __init__(self, rule: str, allowed: Tuple[str, ...] = (), **kwargs):
        super().__init__(
            f"unknown rule {rule!r}",
            category=ErrorCategory.PRECONDITION,
            suggested_action=f"Use one of: {', '.join(allowed)}" if allowed else None,
            **kwargs,
        )


class MissingOperandError(BaseEplabError):
    """A rule was invoked without one of its operands"""
    def __init__(self, rule: str, operand: str, **kwargs):
        super().__init__(f"rule {rule!r} requires operand --{operand}",
                         category=ErrorCategory.PRECONDITION, **kwargs)
        self.rule = rule
        self.operand = operand


class PostconditionError(BaseEplabError):
    """A result failed its own verification"""
    exit_code = ExitCode.POSTCONDITION_FAILURE

    def __init__(self, message: str, **kwargs):
        super().__init__(message, category=ErrorCategory.POSTCONDITION,
                         severity=ErrorSeverity.HIGH, **kwargs)


class CharacterizationDisagreementError(PostconditionError):
    """The five EP characterizations did not agree"""
    def __init__(self, report: Any, **kwargs):
        super().__init__("EP characterizations disagree", technical_details=repr(report), **kwargs)
        self.report = report


class CatalogMismatchError(BaseEplabError):
    """A catalog example was not reproduced"""
    exit_code = ExitCode.CATALOG_MISMATCH

    def __init__(self, case_id: str, field: str, outcome: Any = None, **kwargs):
        super().__init__(f"catalog case {case_id!r} mismatch on {field!r}",
                         category=ErrorCategory.CATALOG, severity=ErrorSeverity.HIGH, **kwargs)
        self.case_id = case_id
        self.field = field
        self.outcome = outcome


class TheoremViolationError(BaseEplabError):
    """All hypotheses held but a conclusion failed"""
    exit_code = ExitCode.THEOREM_VIOLATION

    def __init__(self, theorem_id: str, verdict: Any = None, **kwargs):
        super().__init__(f"theorem {theorem_id!r} violated: hypotheses hold, conclusion fails",
                         category=ErrorCategory.THEOREM, severity=ErrorSeverity.CRITICAL, **kwargs)
        self.theorem_id = theorem_id
        self.verdict = verdict


def safe_execute(
    func: Callable[..., T],
    *args,
    default_value: Optional[T] = None,
    log_errors: bool = True,
    **kwargs,
) -> Tuple[Optional[T], Optional[BaseException]]:
    """
    Execute a function and capture any exception

    Args:
        func: Function to execute
        *args, **kwargs: Function arguments
        default_value: Value returned alongside the exception on error
        log_errors: Whether to log errors

    Returns:
        (result, None) on success, (default_value, exception) on error
    """
    try:
        return func(*args, **kwargs), None
    except Exception as exc:
        if log_errors:
            logger.warning("safe_execute_failed", func=getattr(func, "__name__", repr(func)),
                           error=str(exc), error_type=type(exc).__name__)
        return default_value, exc
