"""Concordance/discordance outranking and pairwise relation classification.

Discordance gaps are normalized by each criterion's observed range across
the matrix, so the veto level ``v`` is scale-free regardless of criterion
units.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import fsum
from typing import Mapping

from .core import DecisionMatrix, normalized_weight_list, oriented_deviation
from .errors import ValidationError

__all__ = [
    "ElectreThresholds",
    "ElectreRelation",
    "OutrankingRelationTable",
    "concordance",
    "discordance",
    "outranks",
    "classify",
]


@dataclass(frozen=True)
class ElectreThresholds:
    """Concordance level ``s`` and veto (discordance) level ``v``.

    ``s`` must lie in [0.5, 1 - min_j w_j]; the upper end depends on the
    weights, so it is checked against the matrix at evaluation time.
    """

    s: float = 0.7
    v: float = 0.3

    def __post_init__(self) -> None:
        if not (0.5 <= self.s <= 1.0):
            raise ValidationError(f"concordance level s must be in [0.5, 1], got {self.s}")
        if not (0.0 <= self.v <= 1.0):
            raise ValidationError(f"veto level v must be in [0, 1], got {self.v}")

    def check_against(self, weights: tuple[float, ...]) -> None:
        upper = 1.0 - min(weights)
        if self.s > upper + 1e-12:
            raise ValidationError(
                f"concordance level s={self.s:g} outside admissible range "
                f"[0.5, {upper:g}] for these weights"
            )


class ElectreRelation(Enum):
    PREFER_A = "P+"      # first of the pair strictly preferred
    PREFER_B = "P-"      # second of the pair strictly preferred
    INDIFFERENT = "I"
    INCOMPARABLE = "R"


@dataclass(frozen=True)
class OutrankingRelationTable:
    """One relation per unordered pair, keyed in matrix order (a before b)."""

    ids: tuple[str, ...]
    relations: Mapping[tuple[str, str], ElectreRelation]

    def relation(self, a: str, b: str) -> ElectreRelation:
        if (a, b) in self.relations:
            return self.relations[(a, b)]
        flipped = self.relations[(b, a)]
        if flipped is ElectreRelation.PREFER_A:
            return ElectreRelation.PREFER_B
        if flipped is ElectreRelation.PREFER_B:
            return ElectreRelation.PREFER_A
        return flipped


def concordance(matrix: DecisionMatrix, a: str, b: str) -> float:
    """Total weight of the coalition where ``a`` is at least as good as ``b``.

    Ties join the coalition on both sides.
    """
    if a == b:
        raise ValidationError("concordance is undefined for an alternative against itself")
    weights = normalized_weight_list(matrix)
    return fsum(
        w
        for w, c in zip(weights, matrix.criteria)
        if oriented_deviation(matrix, a, b, c.id) >= 0
    )


def _column_ranges(matrix: DecisionMatrix) -> tuple[float, ...]:
    ranges = []
    for c in matrix.criteria:
        col = matrix.column(c.id)
        ranges.append(max(col) - min(col))
    return tuple(ranges)


def discordance(matrix: DecisionMatrix, a: str, b: str) -> float:
    """Strongest opposition to "a outranks b", range-normalized to [0, 1]."""
    if a == b:
        raise ValidationError("discordance is undefined for an alternative against itself")
    ranges = _column_ranges(matrix)
    worst = 0.0
    for c, rng in zip(matrix.criteria, ranges):
        dev = oriented_deviation(matrix, a, b, c.id)
        if dev < 0:
            if rng == 0:
                raise ValidationError(
                    f"criterion {c.id!r} has zero observed range; "
                    "discordance normalization is undefined"
                )
            worst = max(worst, -dev / rng)
    return worst


def outranks(matrix: DecisionMatrix, a: str, b: str, t: ElectreThresholds) -> bool:
    """True when the concordance test passes and no veto fires."""
    t.check_against(normalized_weight_list(matrix))
    return concordance(matrix, a, b) >= t.s and discordance(matrix, a, b) <= t.v


def classify(matrix: DecisionMatrix, t: ElectreThresholds) -> OutrankingRelationTable:
    """Classify every pair as P+/P-/I/R from the two outranking tests."""
    if len(matrix.alternatives) < 2:
        raise ValidationError("need at least 2 alternatives to classify pairs")
    t.check_against(normalized_weight_list(matrix))
    ids = matrix.alternative_ids
    relations: dict[tuple[str, str], ElectreRelation] = {}
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            a_over_b = outranks(matrix, a, b, t)
            b_over_a = outranks(matrix, b, a, t)
            if a_over_b and not b_over_a:
                rel = ElectreRelation.PREFER_A
            elif b_over_a and not a_over_b:
                rel = ElectreRelation.PREFER_B
            elif a_over_b and b_over_a:
                rel = ElectreRelation.INDIFFERENT
            else:
                rel = ElectreRelation.INCOMPARABLE
            relations[(a, b)] = rel
    return OutrankingRelationTable(ids, relations)
