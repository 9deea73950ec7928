#!/usr/bin/env python3
"""
Command line
Subcommands: verify-paper, check-ep, pinv, construct, fuglede, random-suite
and schema. Shared flags --eq-tol, --json, --out, --seed and --log-level are
accepted by every subcommand.

Exit codes: 0 pass, 1 catalog mismatch, 2 I/O or parse error, 3 predicate
negative, 4 internal postcondition failure, 5 theorem violation.
"""

import functools
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Optional

import click

from ..core.config import Settings, get_settings
from ..core.error_handling import BaseEplabError, DocumentParseError, ExitCode, TheoremViolationError
from ..core.logger import configure_structlog, get_app_logger
from ..models.matrix import ComplexMatrix, Tolerance
from ..schemas.documents import MatrixDocument, dump_matrix, load_constraint_spec, load_matrix
from ..schemas.reports import (
    CaseRecord,
    CheckRecord,
    EPReportRecord,
    PenroseRecord,
    RunReport,
    ToleranceRecord,
    VerdictRecord,
    report_schema_json,
)
from ..services.catalog import case_index, run_catalog
from ..services.ep import check_ep_construction, ep_construct, is_ep, is_normal
from ..services.fuglede import RULES, run_rule
from ..services.property_suite import run_random_suite
from ..services.pseudoinverse import penrose_check, pinv
from . import rendering

app_logger = get_app_logger()

OPERAND_NAMES = ("A", "B", "T", "S")


@dataclass
class RunContext:
    """Per-invocation settings after flag overrides"""
    command: str
    settings: Settings
    eq_tol: Optional[float]
    as_json: bool
    out: Optional[str]
    seed: int

    @property
    def tolerance(self) -> Tolerance:
        return self.settings.tolerance(self.eq_tol)

    def report(self, passed: bool, tol: Optional[Tolerance] = None, **fields) -> RunReport:
        return RunReport(
            tool_version=self.settings.VERSION,
            command=self.command,
            tolerance=ToleranceRecord.from_tolerance(tol or self.tolerance),
            passed=passed,
            **fields,
        )

    def emit(self, text: str) -> None:
        """Write the command result to --out or stdout"""
        if self.out is None:
            click.echo(text)
            return
        try:
            Path(self.out).write_text(text + "\n", encoding="utf-8")
        except OSError as exc:
            raise DocumentParseError(f"cannot write {self.out}: {exc.strerror or exc}", path=self.out) from exc


def common_options(func: Callable) -> Callable:
    """Flags shared by every subcommand"""
    options = [
        click.option("--eq-tol", type=click.FloatRange(min=0, min_open=True), default=None,
                     help="Equality tolerance (default EPLAB_EQ_TOL, 1e-9)"),
        click.option("--json", "as_json", is_flag=True, help="Machine-readable RunReport output"),
        click.option("--out", type=click.Path(dir_okay=False), default=None,
                     help="Write the result to this file instead of stdout"),
        click.option("--seed", type=int, default=None, help="Random seed (default EPLAB_SEED)"),
        click.option("--log-level", default=None,
                     type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], case_sensitive=False),
                     help="Log level for stderr diagnostics"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def eplab_command(name: str) -> Callable:
    """
    Wrap a command body ``body(run, **kwargs) -> exit code``: configure
    logging, build the RunContext, map eplab errors to their exit codes
    """

    def decorator(body: Callable[..., int]) -> Callable:
        @functools.wraps(body)
        @click.pass_context
        def wrapper(ctx: click.Context, eq_tol, as_json, out, seed, log_level, **kwargs):
            settings = get_settings()
            configure_structlog(log_level or settings.LOG_LEVEL, settings.LOG_FORMAT)
            run = RunContext(
                command=name,
                settings=settings,
                eq_tol=eq_tol,
                as_json=as_json,
                out=out,
                seed=settings.SEED if seed is None else seed,
            )
            app_logger.log_startup(name, {
                "eq_tol": run.tolerance.eq_tol,
                "rank_tol_factor": run.tolerance.rank_tol_factor,
                "svd_method": settings.SVD_METHOD,
                "seed": run.seed,
            })
            try:
                code = int(body(run, **kwargs))
            except BaseEplabError as exc:
                app_logger.log_error(name, type(exc).__name__, exc.message)
                click.echo(f"error: {exc.message}", err=True)
                code = int(exc.exit_code)
            app_logger.log_shutdown(name, code)
            ctx.exit(code)

        return wrapper

    return decorator


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(get_settings().VERSION, prog_name="eplab")
def cli() -> None:
    """EP operators, Moore-Penrose inverses and Fuglede-Putnam type theorem checks"""


# ================================
# verify-paper
# ================================

@cli.command("verify-paper")
@common_options
@eplab_command("verify-paper")
def verify_paper(run: RunContext) -> int:
    """Reproduce every catalog case; exit 1 names the failing cases"""
    outcome = run_catalog(run.tolerance, strict=False)
    cases = case_index()
    report = run.report(
        outcome.passed,
        cases=[
            CaseRecord.from_outcome(o, cases[o.case_id].block_size, cases[o.case_id].note)
            for o in outcome.cases
        ],
    )
    run.emit(report.to_json() if run.as_json else rendering.render_catalog(report))
    if outcome.passed:
        return ExitCode.PASS
    click.echo(f"catalog mismatch: {', '.join(outcome.failed_cases)}", err=True)
    return ExitCode.CATALOG_MISMATCH


# ================================
# check-ep
# ================================

@cli.command("check-ep")
@click.argument("matrix_file", type=click.Path(dir_okay=False))
@common_options
@eplab_command("check-ep")
def check_ep(run: RunContext, matrix_file: str) -> int:
    """Evaluate the five EP characterizations; exit 3 when not EP"""
    t = load_matrix(matrix_file)
    tol = run.tolerance
    report = is_ep(t, tol)
    record = EPReportRecord.from_report(report, is_normal(t, tol))
    if run.as_json:
        run.emit(run.report(report.unanimous, ep_report=record).to_json())
    else:
        run.emit(rendering.render_ep_report(record))
    return ExitCode.PASS if report.verdict else ExitCode.PREDICATE_NEGATIVE


# ================================
# pinv
# ================================

@cli.command("pinv")
@click.argument("matrix_file", type=click.Path(dir_okay=False))
@click.option("--verify", is_flag=True, help="Also evaluate the four Penrose equations")
@common_options
@eplab_command("pinv")
def pinv_command(run: RunContext, matrix_file: str, verify: bool) -> int:
    """Emit the Moore-Penrose inverse as a matrix document"""
    t = load_matrix(matrix_file)
    tol = run.tolerance
    g = pinv(t, tol)
    penrose = PenroseRecord.from_report(penrose_check(t, g, tol)) if verify else None
    passed = penrose.all_hold if penrose else True
    if run.as_json:
        run.emit(run.report(passed, matrix=MatrixDocument.from_matrix(g), penrose=penrose).to_json())
    else:
        run.emit(dump_matrix(g))
        if penrose is not None:
            click.echo(rendering.render_penrose(penrose), err=True)
    return ExitCode.PASS if passed else ExitCode.POSTCONDITION_FAILURE


# ================================
# construct
# ================================

@cli.command("construct")
@click.argument("spec_file", type=click.Path(dir_okay=False))
@click.option("--check-only", is_flag=True, help="Verify the construction without emitting the matrix")
@common_options
@eplab_command("construct")
def construct(run: RunContext, spec_file: str, check_only: bool) -> int:
    """Build an EP matrix whose range is the given subspace"""
    document = load_constraint_spec(spec_file)
    spec, coords = document.to_spec(), document.free_coords()
    tol = run.tolerance
    # raises PostconditionError (exit 4) when the result fails is_ep or R(T) = W
    t = ep_construct(spec, coords, tol)
    if run.as_json:
        verdict = VerdictRecord.from_verdict(check_ep_construction(spec, coords, tol))
        matrix = None if check_only else MatrixDocument.from_matrix(t)
        run.emit(run.report(verdict.consistent, verdict=verdict, matrix=matrix).to_json())
    elif check_only:
        run.emit(f"verified: EP matrix of order {spec.ambient_dim} with range of dimension {spec.dim}")
    else:
        run.emit(dump_matrix(t))
    return ExitCode.PASS


# ================================
# fuglede
# ================================

def _load_operands(files: Dict[str, Optional[str]]) -> Dict[str, ComplexMatrix]:
    return {name: load_matrix(path) for name, path in files.items() if path is not None}


@cli.command("fuglede")
@click.option("--A", "a_file", type=click.Path(dir_okay=False), default=None, help="Matrix file for A")
@click.option("--B", "b_file", type=click.Path(dir_okay=False), default=None, help="Matrix file for B")
@click.option("--T", "t_file", type=click.Path(dir_okay=False), default=None, help="Matrix file for T")
@click.option("--S", "s_file", type=click.Path(dir_okay=False), default=None, help="Matrix file for S")
@click.option("--rule", required=True, help="Checker id: " + ", ".join(RULES))
@click.option("--variant", default=None, help="star_product or mp_star (adjoint rules)")
@common_options
@eplab_command("fuglede")
def fuglede(run: RunContext, a_file, b_file, t_file, s_file, rule: str, variant: Optional[str]) -> int:
    """Run one theorem checker; exit 5 if hypotheses hold and a conclusion fails"""
    operands = _load_operands(dict(zip(OPERAND_NAMES, (a_file, b_file, t_file, s_file))))
    verdict = run_rule(rule, operands, run.tolerance, variant=variant)
    record = VerdictRecord.from_verdict(verdict)
    if run.as_json:
        run.emit(run.report(record.consistent, verdict=record).to_json())
    else:
        run.emit(rendering.render_verdict(record))
    if not verdict.consistent:
        raise TheoremViolationError(verdict.theorem_id, verdict)
    return ExitCode.PASS


# ================================
# random-suite
# ================================

@cli.command("random-suite")
@click.option("--trials", type=click.IntRange(min=1), default=None, help="Trials per check (default 200)")
@click.option("--max-dim", type=click.IntRange(min=2), default=None, help="Largest dimension (default 12)")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Worker threads")
@click.option("--timing", is_flag=True, help="Include elapsed time in the report")
@common_options
@eplab_command("random-suite")
def random_suite(run: RunContext, trials: Optional[int], max_dim: Optional[int],
                 workers: Optional[int], timing: bool) -> int:
    """Seeded property sweeps; exit 0 iff no violation"""
    settings = run.settings
    trials = trials or settings.SUITE_TRIALS
    max_dim = max_dim or settings.SUITE_MAX_DIM
    tol = settings.suite_tolerance(run.eq_tol)

    started = time.perf_counter()
    outcome = run_random_suite(trials, max_dim, run.seed, tol, workers=workers or settings.SUITE_WORKERS)
    elapsed = time.perf_counter() - started

    report = run.report(
        outcome.passed,
        tol=tol,
        checks=[CheckRecord.from_metrics(item) for item in outcome.checks],
        seed=outcome.seed,
        trials=outcome.trials,
        max_dim=outcome.max_dim,
        elapsed_seconds=round(elapsed, 3) if timing else None,
    )
    run.emit(report.to_json() if run.as_json else rendering.render_suite(report, outcome.checks))
    if outcome.passed:
        return ExitCode.PASS
    theorem_checks = [c.name for c in outcome.checks
                      if c.violations and c.name.startswith(("sound:", "consistent:"))]
    if theorem_checks:
        raise TheoremViolationError(", ".join(theorem_checks), outcome)
    return ExitCode.POSTCONDITION_FAILURE


# ================================
# schema
# ================================

@cli.command("schema")
@common_options
@eplab_command("schema")
def schema(run: RunContext) -> int:
    """Print the JSON schema of RunReport"""
    run.emit(report_schema_json())
    return ExitCode.PASS
