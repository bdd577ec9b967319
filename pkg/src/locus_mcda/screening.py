"""Feasibility screening of a decision matrix against per-criterion
conditions, with a violation report per alternative.

Screening is advisory: ranking code accepts either the full or the
screened matrix, and the CLI makes the choice explicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import Condition, DecisionMatrix
from .errors import ValidationError

__all__ = ["ConditionViolation", "ScreeningEntry", "ScreeningReport", "screen", "feasible_subset"]


@dataclass(frozen=True)
class ConditionViolation:
    criterion_id: str
    value: float
    condition: Condition
    gap: float


@dataclass(frozen=True)
class ScreeningEntry:
    alternative: str
    feasible: bool
    violations: tuple[ConditionViolation, ...]


@dataclass(frozen=True)
class ScreeningReport:
    entries: tuple[ScreeningEntry, ...]

    @property
    def feasible_ids(self) -> tuple[str, ...]:
        return tuple(e.alternative for e in self.entries if e.feasible)


def screen(matrix: DecisionMatrix, conds: Mapping[str, Condition]) -> ScreeningReport:
    """Check every alternative against every condition.

    Violation gaps are distances to the nearest bound; an alternative is
    feasible iff it has no violations. Bounds themselves are feasible
    (closed intervals).
    """
    known = set(matrix.criterion_ids)
    for cid in conds:
        if cid not in known:
            raise ValidationError(f"condition references unknown criterion id {cid!r}")
    # Evaluate in criteria order so reports are deterministic.
    checks = [(c.id, matrix.criterion_index(c.id), conds[c.id]) for c in matrix.criteria if c.id in conds]
    entries = []
    for alt in matrix.alternatives:
        violations = []
        for cid, j, cond in checks:
            value = alt.values[j]
            gap = cond.gap(value)
            if gap > 0:
                violations.append(ConditionViolation(cid, value, cond, gap))
        entries.append(ScreeningEntry(alt.id, not violations, tuple(violations)))
    return ScreeningReport(tuple(entries))


def feasible_subset(matrix: DecisionMatrix, report: ScreeningReport) -> DecisionMatrix:
    """The matrix restricted to feasible alternatives; error when none remain."""
    ids = report.feasible_ids
    if not ids:
        raise ValidationError("screening left no feasible alternatives")
    return matrix.select_alternatives(ids)
