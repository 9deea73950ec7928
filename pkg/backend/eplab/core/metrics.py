#!/usr/bin/env python3
"""
Sweep Metrics Collection Module
Thread-safe aggregation of property-suite trial outcomes

Tracks per check:
- trial count
- violation count
- largest residual seen
- first few failure descriptions (ordered by trial index)
"""

import math
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple


@dataclass
class CheckMetrics:
    """Aggregated outcome of one property check"""
    name: str
    trials: int = 0
    violations: int = 0
    max_residual: float = 0.0
    failures: List[str] = field(default_factory=list)


class SweepMetrics:
    """
    Collector shared by the worker threads of one random-suite run

    Checks are reported in registration order and failures in trial order,
    so the snapshot does not depend on thread scheduling.
    """

    def __init__(self, max_failures_kept: int = 5):
        self.max_failures_kept = max_failures_kept
        self._lock = threading.Lock()
        self._order: List[str] = []
        self._trials: Dict[str, int] = {}
        self._violations: Dict[str, int] = {}
        self._max_residual: Dict[str, float] = {}
        self._failures: Dict[str, List[Tuple[int, str]]] = {}

    def register(self, name: str) -> None:
        """Declare a check so it is reported even with zero trials"""
        with self._lock:
            if name not in self._trials:
                self._order.append(name)
                self._trials[name] = 0
                self._violations[name] = 0
                self._max_residual[name] = 0.0
                self._failures[name] = []

    def record_trial(self, name: str, trial: int, ok: bool, residual: float,
                     detail: Optional[str] = None) -> None:
        """
        Record one trial outcome

        Args:
            name: Check name (registered on first use)
            trial: Trial index within the check
            ok: Whether the property held
            residual: Largest residual observed in the trial
            detail: Failure description, kept only for violations
        """
        self.register(name)
        with self._lock:
            self._trials[name] += 1
            if not math.isnan(residual) and residual > self._max_residual[name]:
                self._max_residual[name] = residual
            if not ok:
                self._violations[name] += 1
                self._failures[name].append((trial, detail or "violation"))

    def snapshot(self) -> List[CheckMetrics]:
        """Aggregates in registration order"""
        with self._lock:
            result = []
            for name in self._order:
                failures = sorted(self._failures[name])[: self.max_failures_kept]
                result.append(CheckMetrics(
                    name=name,
                    trials=self._trials[name],
                    violations=self._violations[name],
                    max_residual=self._max_residual[name],
                    failures=[f"trial {idx}: {text}" for idx, text in failures],
                ))
            return result


def format_check_table(items: List[CheckMetrics]) -> str:
    """One fixed-width row per check: name, trials, violations, max residual"""
    lines = [f"{'check':<36} {'trials':>7} {'viol':>5} {'max residual':>13}"]
    for item in items:
        lines.append(
            f"{item.name:<36} {item.trials:>7d} {item.violations:>5d} {item.max_residual:>13.2e}"
        )
    return "\n".join(lines)
