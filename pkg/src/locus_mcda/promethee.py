"""Outranking flows: preference functions, the pairwise preference index,
positive/negative/net flows, and the total and partial preorders.

All pairwise aggregation uses ``math.fsum``, so results do not depend on
the order in which criteria or alternatives are supplied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from math import fsum
from typing import Iterable, Mapping

from .core import (
    DecisionMatrix,
    Direction,
    PreferenceFunctionSpec,
    PreferenceKind,
    normalized_weight_list,
)
from .errors import ValidationError

__all__ = [
    "PreferenceIndexMatrix",
    "FlowTable",
    "FlowEntry",
    "RankedOrder",
    "RankEntry",
    "PartialPreorder",
    "PrometheeRelation",
    "preference_value",
    "preference_index",
    "preference_index_matrix",
    "flows",
    "rank_promethee_ii",
    "rank_promethee_i",
    "ranked_order",
]


def preference_value(spec: PreferenceFunctionSpec, d: float) -> float:
    """Preference degree in [0, 1] for a signed deviation ``d``.

    Nonpositive deviations never generate preference; the shape of the
    rise is set by ``spec.kind`` and its thresholds.
    """
    if d <= 0:
        return 0.0
    kind = spec.kind
    if kind is PreferenceKind.USUAL:
        return 1.0
    if kind is PreferenceKind.U_SHAPE:
        return 1.0 if d > spec.q else 0.0
    if kind is PreferenceKind.V_SHAPE:
        return min(d / spec.p, 1.0)
    if kind is PreferenceKind.LEVEL:
        if d <= spec.q:
            return 0.0
        return 0.5 if d <= spec.p else 1.0
    if kind is PreferenceKind.LINEAR:
        if d <= spec.q:
            return 0.0
        if d <= spec.p:
            return (d - spec.q) / (spec.p - spec.q)
        return 1.0
    # Gaussian
    return 1.0 - math.exp(-(d * d) / (2.0 * spec.s * spec.s))


@dataclass(frozen=True)
class PreferenceIndexMatrix:
    """Square table of pairwise preference intensities, diagonal zero."""

    ids: tuple[str, ...]
    values: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.ids)
        if len(set(self.ids)) != n:
            raise ValidationError("preference matrix ids must be unique")
        if len(self.values) != n or any(len(row) != n for row in self.values):
            raise ValidationError("preference matrix must be square")
        for i, row in enumerate(self.values):
            for k, v in enumerate(row):
                if i == k:
                    if v != 0.0:
                        raise ValidationError("preference matrix diagonal must be zero")
                elif not (-1e-9 <= v <= 1.0 + 1e-9):
                    raise ValidationError(
                        f"preference value out of range [0, 1]: "
                        f"({self.ids[i]}, {self.ids[k]}) = {v}"
                    )

    @property
    def size(self) -> int:
        return len(self.ids)

    def value(self, a: str, b: str) -> float:
        return self.values[self.ids.index(a)][self.ids.index(b)]


@dataclass(frozen=True)
class FlowEntry:
    alternative: str
    phi_plus: float
    phi_minus: float
    phi_net: float


@dataclass(frozen=True)
class FlowTable:
    """Per-alternative outgoing, incoming and net flows.

    Tables produced by :func:`flows` satisfy ``phi_net == phi_plus -
    phi_minus`` exactly; tables loaded from external files keep whatever
    the file says.
    """

    entries: tuple[FlowEntry, ...]

    def __post_init__(self) -> None:
        ids = [e.alternative for e in self.entries]
        if len(set(ids)) != len(ids):
            raise ValidationError("flow table alternatives must be unique")

    @property
    def alternative_ids(self) -> tuple[str, ...]:
        return tuple(e.alternative for e in self.entries)

    def entry(self, alternative: str) -> FlowEntry:
        for e in self.entries:
            if e.alternative == alternative:
                return e
        raise ValidationError(f"unknown alternative id {alternative!r}")


@dataclass(frozen=True)
class RankEntry:
    alternative: str
    rank: int


@dataclass(frozen=True)
class RankedOrder:
    """Total preorder, best first; ties share a competition rank (1,2,2,4)."""

    entries: tuple[RankEntry, ...]

    def rank_of(self, alternative: str) -> int:
        for e in self.entries:
            if e.alternative == alternative:
                return e.rank
        raise ValidationError(f"unknown alternative id {alternative!r}")


class PrometheeRelation(Enum):
    PREFERRED = "P"
    INDIFFERENT = "I"
    INCOMPARABLE = "R"


@dataclass(frozen=True)
class PartialPreorder:
    """Pairwise relations derived from the (phi+, phi-) pair."""

    ids: tuple[str, ...]
    relations: Mapping[tuple[str, str], PrometheeRelation]

    def relation(self, a: str, b: str) -> PrometheeRelation:
        return self.relations[(a, b)]


# ---------------------------------------------------------------------------
# pairwise preference index


def _pair_index(
    va: tuple[float, ...],
    vb: tuple[float, ...],
    signs: tuple[float, ...],
    weights: tuple[float, ...],
    specs: tuple[PreferenceFunctionSpec, ...],
) -> float:
    return fsum(
        w * preference_value(spec, s * (x - y))
        for w, spec, s, x, y in zip(weights, specs, signs, va, vb)
    )


def _orientation_signs(matrix: DecisionMatrix) -> tuple[float, ...]:
    return tuple(
        1.0 if c.direction is Direction.MAXIMIZE else -1.0 for c in matrix.criteria
    )


def preference_index(matrix: DecisionMatrix, a: str, b: str) -> float:
    """Weighted aggregate preference of ``a`` over ``b`` across all criteria."""
    if a == b:
        raise ValidationError("preference index is undefined for an alternative against itself")
    weights = normalized_weight_list(matrix)
    signs = _orientation_signs(matrix)
    specs = tuple(c.pref_fn for c in matrix.criteria)
    va = matrix.alternatives[matrix.alternative_index(a)].values
    vb = matrix.alternatives[matrix.alternative_index(b)].values
    return _pair_index(va, vb, signs, weights, specs)


def preference_index_matrix(matrix: DecisionMatrix) -> PreferenceIndexMatrix:
    """All pairwise preference intensities; diagonal entries are zero."""
    n = len(matrix.alternatives)
    if n < 2:
        raise ValidationError("need at least 2 alternatives for pairwise comparison")
    weights = normalized_weight_list(matrix)
    signs = _orientation_signs(matrix)
    specs = tuple(c.pref_fn for c in matrix.criteria)
    rows = []
    for i, alt_a in enumerate(matrix.alternatives):
        row = []
        for k, alt_b in enumerate(matrix.alternatives):
            if i == k:
                row.append(0.0)
            else:
                row.append(_pair_index(alt_a.values, alt_b.values, signs, weights, specs))
        rows.append(tuple(row))
    return PreferenceIndexMatrix(matrix.alternative_ids, tuple(rows))


# ---------------------------------------------------------------------------
# flows and preorders


def flows(pi: PreferenceIndexMatrix) -> FlowTable:
    """Outgoing/incoming flows as means over the n-1 other alternatives."""
    n = pi.size
    if n < 2:
        raise ValidationError("need at least 2 alternatives to compute flows")
    entries = []
    for i, ident in enumerate(pi.ids):
        plus = fsum(pi.values[i][k] for k in range(n) if k != i) / (n - 1)
        minus = fsum(pi.values[k][i] for k in range(n) if k != i) / (n - 1)
        entries.append(FlowEntry(ident, plus, minus, plus - minus))
    return FlowTable(tuple(entries))


def ranked_order(scores: Iterable[tuple[str, float]]) -> RankedOrder:
    """Competition-rank ids by descending score; ties display in id order."""
    items = sorted(scores, key=lambda item: (-item[1], item[0]))
    entries = []
    rank = 0
    previous: float | None = None
    for position, (ident, score) in enumerate(items, start=1):
        if previous is None or score != previous:
            rank = position
            previous = score
        entries.append(RankEntry(ident, rank))
    return RankedOrder(tuple(entries))


def rank_promethee_ii(flow: FlowTable) -> RankedOrder:
    """Total preorder by descending net flow."""
    return ranked_order((e.alternative, e.phi_net) for e in flow.entries)


def rank_promethee_i(flow: FlowTable) -> PartialPreorder:
    """Partial preorder from the (phi+, phi-) pair, admitting incomparability.

    ``a`` is preferred to ``b`` when it is at least as good on both flows
    and strictly better on one; equal flows mean indifference; crossed
    flows mean the pair is incomparable.
    """
    relations: dict[tuple[str, str], PrometheeRelation] = {}
    for ea in flow.entries:
        for eb in flow.entries:
            if ea.alternative == eb.alternative:
                continue
            plus_ge = ea.phi_plus >= eb.phi_plus
            minus_le = ea.phi_minus <= eb.phi_minus
            strict = ea.phi_plus > eb.phi_plus or ea.phi_minus < eb.phi_minus
            if plus_ge and minus_le and strict:
                rel = PrometheeRelation.PREFERRED
            elif ea.phi_plus == eb.phi_plus and ea.phi_minus == eb.phi_minus:
                rel = PrometheeRelation.INDIFFERENT
            else:
                rel = PrometheeRelation.INCOMPARABLE
            relations[(ea.alternative, eb.alternative)] = rel
    return PartialPreorder(flow.alternative_ids, relations)
