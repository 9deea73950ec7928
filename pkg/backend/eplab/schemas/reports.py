#!/usr/bin/env python3
"""
Report Schemas
Pydantic models for the machine-readable reports of every command

Defines schemas for:
- Named relations with truth value and residual
- Theorem verdicts and their implications
- Catalog cases and random-suite checks
- The top-level RunReport
"""

import json
from typing import Any, Dict, List, Mapping, Optional

from pydantic import BaseModel

from ..core.metrics import CheckMetrics
from ..models.matrix import MACHINE_EPS, Tolerance
from ..models.verdicts import CaseOutcome, EPReport, Evidence, PenroseReport, TheoremVerdict
from .documents import MatrixDocument

# ================================
# Building blocks
# ================================


class ToleranceRecord(BaseModel):
    eq_tol: float
    rank_tol_factor: Optional[float] = None  # None: max(m, n) * machine epsilon
    machine_eps: float = MACHINE_EPS

    @classmethod
    def from_tolerance(cls, tol: Tolerance) -> "ToleranceRecord":
        return cls(eq_tol=tol.eq_tol, rank_tol_factor=tol.rank_tol_factor)


class EvidenceRecord(BaseModel):
    name: str
    holds: bool
    residual: float


def _records(group: Mapping[str, Evidence]) -> List[EvidenceRecord]:
    return [EvidenceRecord(name=name, holds=e.holds, residual=e.residual) for name, e in group.items()]


class ImplicationRecord(BaseModel):
    theorem_id: str
    premises_hold: bool
    conclusions_hold: bool
    consistent: bool


class VerdictRecord(BaseModel):
    theorem_id: str
    hypotheses: List[EvidenceRecord]
    conclusions: List[EvidenceRecord]
    observations: List[EvidenceRecord] = []
    implications: List[ImplicationRecord]
    consistent: bool

    @classmethod
    def from_verdict(cls, verdict: TheoremVerdict) -> "VerdictRecord":
        return cls(
            theorem_id=verdict.theorem_id,
            hypotheses=_records(verdict.hypotheses),
            conclusions=_records(verdict.conclusions),
            observations=_records(verdict.observations),
            implications=[
                ImplicationRecord(
                    theorem_id=s.theorem_id,
                    premises_hold=s.premises_hold,
                    conclusions_hold=s.conclusions_hold,
                    consistent=s.consistent,
                )
                for s in verdict.implication_status()
            ],
            consistent=verdict.consistent,
        )


class EPReportRecord(BaseModel):
    characterizations: List[EvidenceRecord]
    unanimous: bool
    is_ep: bool
    is_normal: bool

    @classmethod
    def from_report(cls, report: EPReport, normal: bool) -> "EPReportRecord":
        return cls(
            characterizations=[EvidenceRecord(name=n, holds=h, residual=r) for n, h, r in report.rows()],
            unanimous=report.unanimous,
            is_ep=report.verdict,
            is_normal=normal,
        )


class PenroseRecord(BaseModel):
    equations: List[EvidenceRecord]
    scale: float
    all_hold: bool

    @classmethod
    def from_report(cls, report: PenroseReport) -> "PenroseRecord":
        return cls(
            equations=[EvidenceRecord(name=n, holds=h, residual=r) for n, h, r in report.rows()],
            scale=report.scale,
            all_hold=report.all_hold,
        )


class CaseRecord(BaseModel):
    case_id: str
    source: str
    note: str = ""
    block_size: int
    passed: bool
    mismatches: List[str]
    verdicts: List[VerdictRecord]

    @classmethod
    def from_outcome(cls, outcome: CaseOutcome, block_size: int, note: str = "") -> "CaseRecord":
        return cls(
            case_id=outcome.case_id,
            source=outcome.source,
            note=note,
            block_size=block_size,
            passed=outcome.passed,
            mismatches=list(outcome.mismatches),
            verdicts=[VerdictRecord.from_verdict(v) for v in outcome.verdicts],
        )


class CheckRecord(BaseModel):
    name: str
    trials: int
    violations: int
    max_residual: float
    failures: List[str] = []

    @classmethod
    def from_metrics(cls, item: CheckMetrics) -> "CheckRecord":
        return cls(
            name=item.name,
            trials=item.trials,
            violations=item.violations,
            max_residual=item.max_residual,
            failures=list(item.failures),
        )


# ================================
# Top-level report
# ================================


class RunReport(BaseModel):
    """
    Report of one command run

    ``passed`` is true exactly when every verdict is consistent and, for
    catalog runs, every expectation is reproduced; for the random suite it
    means zero violations. ``elapsed_seconds`` is omitted unless timing was
    requested so that seeded runs serialize identically.
    """
    tool_version: str
    command: str
    tolerance: ToleranceRecord
    passed: bool
    cases: Optional[List[CaseRecord]] = None
    checks: Optional[List[CheckRecord]] = None
    verdict: Optional[VerdictRecord] = None
    ep_report: Optional[EPReportRecord] = None
    penrose: Optional[PenroseRecord] = None
    matrix: Optional[MatrixDocument] = None
    seed: Optional[int] = None
    trials: Optional[int] = None
    max_dim: Optional[int] = None
    elapsed_seconds: Optional[float] = None

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True)


def report_schema() -> Dict[str, Any]:
    return RunReport.model_json_schema()


def report_schema_json() -> str:
    return json.dumps(report_schema(), indent=2, sort_keys=True)
