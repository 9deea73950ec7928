#!/usr/bin/env python3
"""
Structured Logging Module
structlog configuration plus domain loggers for checkers, catalog runs and sweeps.
All log output goes to stderr; stdout is reserved for command results.
"""

import logging
import sys
from typing import Any, Dict, Optional

import structlog


def configure_structlog(log_level: str = "INFO", log_format: str = "console") -> None:
    """
    Configure structlog and the stdlib root logger

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_format: Log format (json or console)
    """
    level = getattr(logging, log_level.upper(), logging.INFO)

    processors = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.processors.TimeStamper(fmt="ISO"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        structlog.processors.CallsiteParameterAdder(
            parameters=[
                structlog.processors.CallsiteParameter.FILENAME,
                structlog.processors.CallsiteParameter.FUNC_NAME,
                structlog.processors.CallsiteParameter.LINENO,
            ]
        ),
    ]

    if log_format.lower() == "json":
        processors.append(structlog.processors.JSONRenderer(indent=None))
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=False))

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.stdlib.BoundLogger,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )

    # force: every command invocation rebinds the handler to the current stderr
    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=level, force=True)


class VerificationLogger:
    """
    Logger for theorem checkers, EP construction and catalog runs
    """

    def __init__(self, name: str = "verification"):
        self.logger = structlog.get_logger(name)

    def log_check_start(self, theorem_id: str, dim: int) -> None:
        """Log a checker invocation"""
        self.logger.debug(
            "theorem_check_start",
            theorem_id=theorem_id,
            dim=dim,
            event_type="check_start",
        )

    def log_verdict(self, theorem_id: str, hypotheses_hold: bool, conclusions_hold: bool,
                    consistent: bool) -> None:
        """Log a finished verdict; an inconsistent verdict is an error"""
        log = self.logger.debug if consistent else self.logger.error
        log(
            "theorem_verdict",
            theorem_id=theorem_id,
            hypotheses_hold=hypotheses_hold,
            conclusions_hold=conclusions_hold,
            consistent=consistent,
            event_type="verdict",
        )

    def log_case_result(self, case_id: str, passed: bool, mismatches: Optional[list] = None) -> None:
        """Log one catalog case"""
        log = self.logger.info if passed else self.logger.warning
        log(
            "catalog_case",
            case_id=case_id,
            passed=passed,
            mismatches=mismatches or [],
            event_type="catalog_case",
        )

    def log_catalog_done(self, total: int, failed: int) -> None:
        """Log a finished catalog run"""
        self.logger.info(
            "catalog_done",
            total=total,
            failed=failed,
            event_type="catalog_done",
        )

    def log_construction(self, ambient_dim: int, subspace_dim: int, verified: bool) -> None:
        """Log an EP construction and its postcondition"""
        log = self.logger.info if verified else self.logger.error
        log(
            "ep_construction",
            ambient_dim=ambient_dim,
            subspace_dim=subspace_dim,
            verified=verified,
            event_type="ep_construct",
        )


class SuiteLogger:
    """
    Logger for the random property suite
    """

    def __init__(self, name: str = "property_suite"):
        self.logger = structlog.get_logger(name)

    def log_suite_start(self, trials: int, max_dim: int, seed: int, workers: int) -> None:
        """Log random-suite start"""
        self.logger.info(
            "suite_start",
            trials=trials,
            max_dim=max_dim,
            seed=seed,
            workers=workers,
            event_type="suite_start",
        )

    def log_check_summary(self, check: str, trials: int, violations: int, max_residual: float) -> None:
        """Log the aggregate of one property check"""
        log = self.logger.info if violations == 0 else self.logger.error
        log(
            "suite_check",
            check=check,
            trials=trials,
            violations=violations,
            max_residual=max_residual,
            event_type="suite_check",
        )

    def log_violation(self, check: str, trial: int, detail: str) -> None:
        """Log a single violating trial"""
        self.logger.error(
            "suite_violation",
            check=check,
            trial=trial,
            detail=detail,
            event_type="suite_violation",
        )


class AppLogger:
    """
    Main application logger
    """

    def __init__(self, name: str = "eplab"):
        self.logger = structlog.get_logger(name)

    def log_startup(self, command: str, config: Dict[str, Any]) -> None:
        """Log command startup with effective settings"""
        self.logger.info(
            "command_startup",
            command=command,
            config=config,
            event_type="app_startup",
        )

    def log_shutdown(self, command: str, exit_code: int) -> None:
        """Log command exit"""
        self.logger.info(
            "command_shutdown",
            command=command,
            exit_code=exit_code,
            event_type="app_shutdown",
        )

    def log_error(self, command: str, error_type: str, message: str) -> None:
        """Log an error that terminates a command"""
        self.logger.error(
            "command_error",
            command=command,
            error_type=error_type,
            message=message,
            event_type="app_error",
        )


def get_app_logger() -> AppLogger:
    """Get application logger instance"""
    return AppLogger()
