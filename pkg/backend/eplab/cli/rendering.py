#!/usr/bin/env python3
"""
Text rendering
Fixed-width tables for verdicts, EP reports, Penrose certificates, catalog
and random-suite runs; residuals in %.2e
"""

from typing import Iterable, List, Tuple

from ..core.metrics import format_check_table
from ..schemas.reports import CaseRecord, EPReportRecord, EvidenceRecord, PenroseRecord, RunReport, VerdictRecord

NAME_WIDTH = 48


def yes_no(value: bool) -> str:
    return "yes" if value else "no"


def evidence_table(rows: Iterable[EvidenceRecord], heading: str = "relation") -> List[str]:
    lines = [f"{heading:<{NAME_WIDTH}} {'value':>5}  {'residual':>9}"]
    for row in rows:
        lines.append(f"{row.name:<{NAME_WIDTH}} {yes_no(row.holds):>5}  {row.residual:>9.2e}")
    return lines


def render_verdict(verdict: VerdictRecord) -> str:
    lines = [f"theorem: {verdict.theorem_id}"]
    sections: Tuple[Tuple[str, List[EvidenceRecord]], ...] = (
        ("hypotheses", verdict.hypotheses),
        ("conclusions", verdict.conclusions),
        ("observations", verdict.observations),
    )
    for title, rows in sections:
        if rows:
            lines.append("")
            lines.extend(evidence_table(rows, title))
    lines.append("")
    for imp in verdict.implications:
        lines.append(
            f"implication {imp.theorem_id}: premises {yes_no(imp.premises_hold)}, "
            f"conclusions {yes_no(imp.conclusions_hold)}, consistent {yes_no(imp.consistent)}"
        )
    lines.append(f"consistent: {yes_no(verdict.consistent)}")
    return "\n".join(lines)


def render_ep_report(record: EPReportRecord) -> str:
    lines = evidence_table(record.characterizations, "characterization")
    lines.append("")
    lines.append(f"EP: {yes_no(record.is_ep)}, normal: {yes_no(record.is_normal)}")
    return "\n".join(lines)


def render_penrose(record: PenroseRecord) -> str:
    lines = evidence_table(record.equations, "Penrose equation")
    lines.append(f"all hold: {yes_no(record.all_hold)} (scale {record.scale:.2e})")
    return "\n".join(lines)


def _case_line(case: CaseRecord) -> str:
    status = "PASS" if case.passed else "FAIL"
    return f"{case.case_id:<32} {status:<4}  {case.source}"


def render_catalog(report: RunReport) -> str:
    cases = report.cases or []
    lines = [f"{'case':<32} {'':<4}  source"]
    for case in cases:
        lines.append(_case_line(case))
        for mismatch in case.mismatches:
            lines.append(f"{'':<32} {'':<4}  mismatch: {mismatch}")
    failed = sum(1 for case in cases if not case.passed)
    lines.append("")
    lines.append(f"{len(cases)} cases, {failed} failed (eq_tol {report.tolerance.eq_tol:.2e})")
    return "\n".join(lines)


def render_suite(report: RunReport, items) -> str:
    lines = [format_check_table(items)]
    for item in items:
        for failure in item.failures:
            lines.append(f"  {item.name}: {failure}")
    violations = sum(item.violations for item in items)
    lines.append("")
    lines.append(
        f"seed {report.seed}, trials {report.trials}, max dim {report.max_dim}, "
        f"violations {violations}"
    )
    if report.elapsed_seconds is not None:
        lines.append(f"elapsed {report.elapsed_seconds:.3f} s")
    return "\n".join(lines)
