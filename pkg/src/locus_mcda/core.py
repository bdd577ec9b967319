"""Shared domain model: criteria, alternatives, and the decision matrix.

Everything here is an immutable value; all operations are pure functions,
so matrices can be shared freely across threads or processes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from math import fsum, inf
from typing import Sequence

from .errors import ValidationError

#: Tolerance for "weights already sum to one".
WEIGHT_SUM_TOL = 1e-12


class Direction(Enum):
    """Optimization direction of a criterion."""

    MAXIMIZE = "max"
    MINIMIZE = "min"

    @classmethod
    def parse(cls, text: str) -> "Direction":
        key = text.strip().lower()
        for member in cls:
            if key in (member.value, member.name.lower()):
                return member
        raise ValidationError(f"unknown direction {text!r} (expected 'max' or 'min')")


class PreferenceKind(Enum):
    """The six generalized criterion shapes."""

    USUAL = "usual"
    U_SHAPE = "u-shape"
    V_SHAPE = "v-shape"
    LEVEL = "level"
    LINEAR = "linear-with-indifference"
    GAUSSIAN = "gaussian"

    @classmethod
    def parse(cls, text: str) -> "PreferenceKind":
        key = text.strip().lower().replace("-", "").replace("_", "")
        aliases = {
            "usual": cls.USUAL,
            "ushape": cls.U_SHAPE,
            "vshape": cls.V_SHAPE,
            "level": cls.LEVEL,
            "linear": cls.LINEAR,
            "linearwithindifference": cls.LINEAR,
            "gaussian": cls.GAUSSIAN,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValidationError(
                f"unknown preference function kind {text!r}; expected one of "
                f"{sorted(set(aliases))}"
            ) from None


# Which parameters each kind consumes.
_KIND_PARAMS = {
    PreferenceKind.USUAL: (),
    PreferenceKind.U_SHAPE: ("q",),
    PreferenceKind.V_SHAPE: ("p",),
    PreferenceKind.LEVEL: ("q", "p"),
    PreferenceKind.LINEAR: ("q", "p"),
    PreferenceKind.GAUSSIAN: ("s",),
}


@dataclass(frozen=True)
class PreferenceFunctionSpec:
    """Shape and thresholds of one generalized criterion.

    ``q`` is the indifference threshold, ``p`` the strict-preference
    threshold and ``s`` the Gaussian spread, all in criterion units.
    Only the parameters the chosen kind uses may be given.
    """

    kind: PreferenceKind = PreferenceKind.USUAL
    q: float | None = None
    p: float | None = None
    s: float | None = None

    def __post_init__(self) -> None:
        wanted = _KIND_PARAMS[self.kind]
        for name in ("q", "p", "s"):
            value = getattr(self, name)
            if name in wanted:
                if value is None:
                    raise ValidationError(
                        f"preference function {self.kind.value!r} requires parameter {name!r}"
                    )
                if not math.isfinite(value):
                    raise ValidationError(f"parameter {name!r} must be finite, got {value!r}")
            elif value is not None:
                raise ValidationError(
                    f"preference function {self.kind.value!r} does not use parameter {name!r}"
                )
        if self.q is not None and self.q < 0:
            raise ValidationError(f"indifference threshold q must be >= 0, got {self.q}")
        if self.p is not None and self.p <= 0:
            raise ValidationError(f"preference threshold p must be > 0, got {self.p}")
        if self.q is not None and self.p is not None and self.p <= self.q:
            raise ValidationError(f"thresholds must satisfy p > q, got q={self.q}, p={self.p}")
        if self.s is not None and self.s <= 0:
            raise ValidationError(f"Gaussian spread s must be > 0, got {self.s}")


@dataclass(frozen=True)
class Condition:
    """A closed feasibility interval; either end may be infinite.

    One-sided conditions (``value >= x`` / ``value <= x``) are intervals
    with a single finite bound.
    """

    lo: float = -inf
    hi: float = inf

    def __post_init__(self) -> None:
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValidationError("condition bounds must not be NaN")
        if self.lo > self.hi:
            raise ValidationError(f"condition bounds out of order: [{self.lo}, {self.hi}]")

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi

    def gap(self, value: float) -> float:
        """Distance to the nearest bound; 0 on or inside the interval."""
        if value < self.lo:
            return self.lo - value
        if value > self.hi:
            return value - self.hi
        return 0.0

    def describe(self) -> str:
        if self.lo == -inf and self.hi == inf:
            return "unconstrained"
        if self.lo == -inf:
            return f"<= {_fmt_bound(self.hi)}"
        if self.hi == inf:
            return f">= {_fmt_bound(self.lo)}"
        return f"[{_fmt_bound(self.lo)}, {_fmt_bound(self.hi)}]"


def _fmt_bound(x: float) -> str:
    return f"{x:g}"


@dataclass(frozen=True)
class Criterion:
    """One evaluation axis: direction, weight, preference shape, condition."""

    id: str
    name: str = ""
    direction: Direction = Direction.MAXIMIZE
    weight: float = 1.0
    pref_fn: PreferenceFunctionSpec = field(default_factory=PreferenceFunctionSpec)
    condition: Condition | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("criterion id must be non-empty")
        if not (self.weight >= 0) or not math.isfinite(self.weight):
            raise ValidationError(f"criterion {self.id!r}: weight must be >= 0, got {self.weight}")
        if not self.name:
            object.__setattr__(self, "name", self.id)


@dataclass(frozen=True)
class Alternative:
    """One candidate, with a value per criterion in matrix order."""

    id: str
    values: tuple[float, ...]
    name: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("alternative id must be non-empty")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        for v in self.values:
            if not math.isfinite(v):
                raise ValidationError(
                    f"alternative {self.id!r}: values must be finite, got {v!r}"
                )
        if not self.name:
            object.__setattr__(self, "name", self.id)


@dataclass(frozen=True)
class DecisionMatrix:
    """Alternatives evaluated on weighted, directional criteria."""

    criteria: tuple[Criterion, ...]
    alternatives: tuple[Alternative, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "criteria", tuple(self.criteria))
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        if not self.criteria:
            raise ValidationError("decision matrix needs at least one criterion")
        if not self.alternatives:
            raise ValidationError("decision matrix needs at least one alternative")
        crit_ids = [c.id for c in self.criteria]
        if len(set(crit_ids)) != len(crit_ids):
            raise ValidationError("criterion ids must be unique")
        alt_ids = [a.id for a in self.alternatives]
        if len(set(alt_ids)) != len(alt_ids):
            raise ValidationError("alternative ids must be unique")
        m = len(self.criteria)
        for alt in self.alternatives:
            if len(alt.values) != m:
                raise ValidationError(
                    f"alternative {alt.id!r} has {len(alt.values)} values, expected {m}"
                )

    # -- lookups ---------------------------------------------------------

    def criterion_index(self, criterion_id: str) -> int:
        for i, c in enumerate(self.criteria):
            if c.id == criterion_id:
                return i
        raise ValidationError(f"unknown criterion id {criterion_id!r}")

    def alternative_index(self, alternative_id: str) -> int:
        for i, a in enumerate(self.alternatives):
            if a.id == alternative_id:
                return i
        raise ValidationError(f"unknown alternative id {alternative_id!r}")

    def value(self, alternative_id: str, criterion_id: str) -> float:
        return self.alternatives[self.alternative_index(alternative_id)].values[
            self.criterion_index(criterion_id)
        ]

    @property
    def criterion_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.criteria)

    @property
    def alternative_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.alternatives)

    def column(self, criterion_id: str) -> tuple[float, ...]:
        j = self.criterion_index(criterion_id)
        return tuple(a.values[j] for a in self.alternatives)

    # -- derived matrices --------------------------------------------------

    def with_alternative(self, alternative: Alternative) -> "DecisionMatrix":
        """A new matrix with one alternative appended."""
        return DecisionMatrix(self.criteria, self.alternatives + (alternative,))

    def select_alternatives(self, ids: Sequence[str]) -> "DecisionMatrix":
        """A new matrix restricted to the given alternatives, in matrix order."""
        keep = set(ids)
        unknown = keep - set(self.alternative_ids)
        if unknown:
            raise ValidationError(f"unknown alternative ids: {sorted(unknown)}")
        return DecisionMatrix(
            self.criteria, tuple(a for a in self.alternatives if a.id in keep)
        )


def oriented_deviation(
    matrix: DecisionMatrix, a: str, b: str, criterion_id: str
) -> float:
    """Signed advantage of ``a`` over ``b`` on one criterion.

    Positive always means "a is better than b on this criterion",
    whatever the criterion's direction.
    """
    j = matrix.criterion_index(criterion_id)
    ia = matrix.alternative_index(a)
    ib = matrix.alternative_index(b)
    raw = matrix.alternatives[ia].values[j] - matrix.alternatives[ib].values[j]
    return raw if matrix.criteria[j].direction is Direction.MAXIMIZE else -raw


def normalize_weights(matrix: DecisionMatrix) -> DecisionMatrix:
    """Scale criterion weights to sum to one, preserving their ratios.

    Idempotent: a matrix whose weights already sum to one (within
    ``WEIGHT_SUM_TOL``) is returned unchanged.
    """
    total = fsum(c.weight for c in matrix.criteria)
    if total <= 0:
        raise ValidationError("cannot normalize weights: all weights are zero")
    if abs(total - 1.0) <= WEIGHT_SUM_TOL:
        return matrix
    criteria = tuple(replace(c, weight=c.weight / total) for c in matrix.criteria)
    return DecisionMatrix(criteria, matrix.alternatives)


def normalized_weight_list(matrix: DecisionMatrix) -> tuple[float, ...]:
    """Normalized weights in criteria order."""
    return tuple(c.weight for c in normalize_weights(matrix).criteria)


def conditions_of(matrix: DecisionMatrix) -> dict[str, Condition]:
    """The feasibility conditions attached to the matrix's criteria."""
    return {c.id: c.condition for c in matrix.criteria if c.condition is not None}
