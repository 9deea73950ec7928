#!/usr/bin/env python3
"""
Verdict records
Penrose and EP reports, EP witness, rank-1 profile, theorem verdicts and
the worked-example (catalog) case types
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from .matrix import ComplexMatrix
from .subspace import ConstraintSpec

PENROSE_EQUATIONS = ("TGT=T", "GTG=G", "(TG)*=TG", "(GT)*=GT")

EP_CHARACTERIZATIONS = (
    "char_ranges_equal",
    "char_mp_commute",
    "char_nullperp_is_range",
    "char_null_equal",
    "char_witness_bijective",
)


@dataclass(frozen=True)
class PenroseReport:
    eq1_holds: bool
    eq2_holds: bool
    eq3_holds: bool
    eq4_holds: bool
    residuals: Tuple[float, float, float, float]
    # max(1, ‖T‖_F, ‖G‖_F)
    scale: float = 1.0

    @property
    def all_hold(self) -> bool:
        return self.eq1_holds and self.eq2_holds and self.eq3_holds and self.eq4_holds

    def rows(self) -> List[Tuple[str, bool, float]]:
        flags = (self.eq1_holds, self.eq2_holds, self.eq3_holds, self.eq4_holds)
        return list(zip(PENROSE_EQUATIONS, flags, self.residuals))


@dataclass(frozen=True)
class EPWitness:
    """
    P = T*T† + (I − TT†) with the two checks that make it a witness:
    PT = T* and P bijective (full numerical rank)
    """
    operator: ComplexMatrix
    pt_residual: float
    pt_holds: bool
    min_singular_value: float
    rank_deficiency: int

    @property
    def full_rank(self) -> bool:
        return self.rank_deficiency == 0

    @property
    def succeeded(self) -> bool:
        return self.pt_holds and self.full_rank

    @property
    def failed_checks(self) -> Tuple[str, ...]:
        failed = []
        if not self.pt_holds:
            failed.append("PT=T*")
        if not self.full_rank:
            failed.append("P bijective")
        return tuple(failed)


@dataclass(frozen=True)
class EPReport:
    char_ranges_equal: bool
    char_mp_commute: bool
    char_nullperp_is_range: bool
    char_null_equal: bool
    char_witness_bijective: bool
    residuals: Tuple[float, float, float, float, float]

    @property
    def flags(self) -> Tuple[bool, ...]:
        return tuple(getattr(self, name) for name in EP_CHARACTERIZATIONS)

    @property
    def unanimous(self) -> bool:
        return len(set(self.flags)) == 1

    @property
    def verdict(self) -> bool:
        """Common value of the five characterizations (only meaningful when unanimous)"""
        return self.flags[0]

    def rows(self) -> List[Tuple[str, bool, float]]:
        return list(zip(EP_CHARACTERIZATIONS, self.flags, self.residuals))


@dataclass(frozen=True)
class RankOneProfile:
    is_rank1: bool
    is_ep: bool
    is_normal: bool
    is_real: bool
    is_symmetric: bool
    normal_residual: float
    symmetric_residual: float

    @property
    def normality_implication_holds(self) -> bool:
        """rank-1 and EP ⇒ normal"""
        return not (self.is_rank1 and self.is_ep) or self.is_normal

    @property
    def symmetry_implication_holds(self) -> bool:
        """rank-1, real and EP ⇒ symmetric"""
        return not (self.is_rank1 and self.is_real and self.is_ep) or self.is_symmetric


@dataclass(frozen=True)
class Evidence:
    """Truth value of one relation plus the residual it was decided on"""
    holds: bool
    residual: float = 0.0


@dataclass(frozen=True)
class Implication:
    """All named premises true ⇒ all named conclusions true"""
    theorem_id: str
    premises: Tuple[str, ...]
    conclusions: Tuple[str, ...]


@dataclass(frozen=True)
class ImplicationStatus:
    theorem_id: str
    premises_hold: bool
    conclusions_hold: bool

    @property
    def consistent(self) -> bool:
        return not self.premises_hold or self.conclusions_hold


@dataclass(frozen=True)
class TheoremVerdict:
    """
    Outcome of one theorem checker

    ``consistent`` is false exactly when some implication has all premises
    true and a conclusion false. With no explicit implications the verdict
    carries one: every hypothesis ⇒ every conclusion.
    """
    theorem_id: str
    hypotheses: Mapping[str, Evidence]
    conclusions: Mapping[str, Evidence]
    observations: Mapping[str, Evidence] = field(default_factory=dict)
    implications: Tuple[Implication, ...] = ()

    def __post_init__(self) -> None:
        if not self.implications:
            object.__setattr__(self, "implications", (
                Implication(self.theorem_id, tuple(self.hypotheses), tuple(self.conclusions)),
            ))

    def evidence(self, name: str) -> Evidence:
        for group in (self.hypotheses, self.conclusions, self.observations):
            if name in group:
                return group[name]
        raise KeyError(name)

    def implication_status(self) -> List[ImplicationStatus]:
        return [
            ImplicationStatus(
                theorem_id=imp.theorem_id,
                premises_hold=all(self.evidence(p).holds for p in imp.premises),
                conclusions_hold=all(self.evidence(c).holds for c in imp.conclusions),
            )
            for imp in self.implications
        ]

    @property
    def hypotheses_hold(self) -> bool:
        return all(e.holds for e in self.hypotheses.values())

    @property
    def conclusions_hold(self) -> bool:
        return all(e.holds for e in self.conclusions.values())

    @property
    def consistent(self) -> bool:
        return all(status.consistent for status in self.implication_status())

    @property
    def max_residual(self) -> float:
        values = [e.residual for group in (self.hypotheses, self.conclusions, self.observations)
                  for e in group.values()]
        return max(values, default=0.0)


@dataclass(frozen=True)
class CaseCheck:
    """One checker run inside a catalog case with the booleans it must reproduce"""
    rule: str
    operands: Mapping[str, str]
    expected: Mapping[str, bool]
    variant: Optional[str] = None


@dataclass(frozen=True)
class CounterexampleCase:
    """
    A worked example encoded as finite blocks

    ``operators`` maps names (T, S, A, B, ...) to matrices; each CaseCheck
    binds checker parameters to those names. ``block_size`` is the size of
    the leading block kept from operators that act as identity beyond it.
    ``source`` cites the rules the case exercises (comma-separated rule ids,
    then a colon) followed by what the example shows.
    """
    case_id: str
    source: str
    block_size: int
    operators: Mapping[str, ComplexMatrix]
    checks: Tuple[CaseCheck, ...]
    note: str = ""
    constraint: Optional[ConstraintSpec] = None
    expected_operator: Optional[ComplexMatrix] = None


@dataclass
class CaseOutcome:
    case_id: str
    source: str
    verdicts: List[TheoremVerdict]
    mismatches: List[str]

    @property
    def passed(self) -> bool:
        return not self.mismatches and all(v.consistent for v in self.verdicts)


@dataclass
class CatalogOutcome:
    cases: List[CaseOutcome]

    @property
    def passed(self) -> bool:
        return all(case.passed for case in self.cases)

    @property
    def failed_cases(self) -> List[str]:
        return [case.case_id for case in self.cases if not case.passed]


def flatten_expectations(verdict: TheoremVerdict) -> Dict[str, bool]:
    """Every named relation of a verdict with its truth value"""
    values: Dict[str, bool] = {}
    for group in (verdict.hypotheses, verdict.conclusions, verdict.observations):
        values.update({name: e.holds for name, e in group.items()})
    return values
