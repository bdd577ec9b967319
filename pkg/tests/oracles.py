"""Independent naive reimplementations used as test oracles.

Everything here is written directly from the definitions with plain
loops and plain ``sum``; nothing is shared with the package's own
computation paths beyond reading the data containers.
"""

from __future__ import annotations

import math

import numpy as np

from locus_mcda import (
    Alternative,
    Criterion,
    DecisionMatrix,
    Direction,
    PreferenceFunctionSpec,
    PreferenceKind,
)

ALL_KINDS = (
    PreferenceKind.USUAL,
    PreferenceKind.U_SHAPE,
    PreferenceKind.V_SHAPE,
    PreferenceKind.LEVEL,
    PreferenceKind.LINEAR,
    PreferenceKind.GAUSSIAN,
)


def naive_preference(spec: PreferenceFunctionSpec, d: float) -> float:
    if d <= 0:
        return 0.0
    k = spec.kind
    if k is PreferenceKind.USUAL:
        return 1.0
    if k is PreferenceKind.U_SHAPE:
        return 0.0 if d <= spec.q else 1.0
    if k is PreferenceKind.V_SHAPE:
        return d / spec.p if d < spec.p else 1.0
    if k is PreferenceKind.LEVEL:
        if d <= spec.q:
            return 0.0
        if d <= spec.p:
            return 0.5
        return 1.0
    if k is PreferenceKind.LINEAR:
        if d <= spec.q:
            return 0.0
        if d <= spec.p:
            return (d - spec.q) / (spec.p - spec.q)
        return 1.0
    return 1.0 - math.exp(-(d**2) / (2.0 * spec.s**2))


def naive_deviation(matrix: DecisionMatrix, a: str, b: str, j: int) -> float:
    ia = [alt.id for alt in matrix.alternatives].index(a)
    ib = [alt.id for alt in matrix.alternatives].index(b)
    ga = matrix.alternatives[ia].values[j]
    gb = matrix.alternatives[ib].values[j]
    if matrix.criteria[j].direction is Direction.MAXIMIZE:
        return ga - gb
    return gb - ga


def naive_weights(matrix: DecisionMatrix) -> list[float]:
    total = sum(c.weight for c in matrix.criteria)
    return [c.weight / total for c in matrix.criteria]


def naive_pi(matrix: DecisionMatrix, a: str, b: str) -> float:
    weights = naive_weights(matrix)
    total = 0.0
    for j, crit in enumerate(matrix.criteria):
        d = naive_deviation(matrix, a, b, j)
        total += weights[j] * naive_preference(crit.pref_fn, d)
    return total


def naive_pi_grid(matrix: DecisionMatrix) -> dict[tuple[str, str], float]:
    ids = [alt.id for alt in matrix.alternatives]
    return {(a, b): naive_pi(matrix, a, b) for a in ids for b in ids if a != b}


def naive_flows(matrix: DecisionMatrix) -> dict[str, tuple[float, float, float]]:
    ids = [alt.id for alt in matrix.alternatives]
    grid = naive_pi_grid(matrix)
    n = len(ids)
    out = {}
    for a in ids:
        plus = sum(grid[(a, b)] for b in ids if b != a) / (n - 1)
        minus = sum(grid[(b, a)] for b in ids if b != a) / (n - 1)
        out[a] = (plus, minus, plus - minus)
    return out


def naive_concordance(matrix: DecisionMatrix, a: str, b: str) -> float:
    weights = naive_weights(matrix)
    total = 0.0
    for j in range(len(matrix.criteria)):
        if naive_deviation(matrix, a, b, j) >= 0:
            total += weights[j]
    return total


def naive_discordance(matrix: DecisionMatrix, a: str, b: str) -> float:
    worst = 0.0
    for j, crit in enumerate(matrix.criteria):
        col = [alt.values[j] for alt in matrix.alternatives]
        spread = max(col) - min(col)
        d = naive_deviation(matrix, a, b, j)
        if d < 0:
            worst = max(worst, (-d) / spread)
    return worst


def naive_outranks(matrix: DecisionMatrix, a: str, b: str, s: float, v: float) -> bool:
    return naive_concordance(matrix, a, b) >= s and naive_discordance(matrix, a, b) <= v


def naive_classify(matrix: DecisionMatrix, s: float, v: float) -> dict[tuple[str, str], str]:
    ids = [alt.id for alt in matrix.alternatives]
    out = {}
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            ab = naive_outranks(matrix, a, b, s, v)
            ba = naive_outranks(matrix, b, a, s, v)
            if ab and not ba:
                out[(a, b)] = "P+"
            elif ba and not ab:
                out[(a, b)] = "P-"
            elif ab and ba:
                out[(a, b)] = "I"
            else:
                out[(a, b)] = "R"
    return out


# ---------------------------------------------------------------------------
# random instances


def random_spec(rng: np.random.Generator, kinds=ALL_KINDS) -> PreferenceFunctionSpec:
    kind = kinds[rng.integers(len(kinds))]
    if kind is PreferenceKind.USUAL:
        return PreferenceFunctionSpec(kind)
    if kind is PreferenceKind.U_SHAPE:
        return PreferenceFunctionSpec(kind, q=float(rng.uniform(0, 2)))
    if kind is PreferenceKind.V_SHAPE:
        return PreferenceFunctionSpec(kind, p=float(rng.uniform(0.5, 3)))
    if kind is PreferenceKind.GAUSSIAN:
        return PreferenceFunctionSpec(kind, s=float(rng.uniform(0.2, 3)))
    q = float(rng.uniform(0, 1.5))
    return PreferenceFunctionSpec(kind, q=q, p=q + float(rng.uniform(0.1, 2)))


def random_matrix(
    rng: np.random.Generator,
    *,
    n_max: int = 6,
    m_min: int = 1,
    m_max: int = 5,
    kinds=ALL_KINDS,
    integer_values: bool = False,
) -> DecisionMatrix:
    """A random instance; integer values force plenty of ties."""
    n = int(rng.integers(2, n_max + 1))
    m = int(rng.integers(m_min, m_max + 1))
    criteria = tuple(
        Criterion(
            id=f"c{j}",
            direction=Direction.MAXIMIZE if rng.random() < 0.5 else Direction.MINIMIZE,
            weight=float(rng.uniform(0.1, 5.0)),
            pref_fn=random_spec(rng, kinds),
        )
        for j in range(m)
    )
    alternatives = []
    for i in range(n):
        if integer_values:
            values = tuple(float(rng.integers(0, 4)) for _ in range(m))
        else:
            values = tuple(float(rng.normal(0, 2)) for _ in range(m))
        alternatives.append(Alternative(f"a{i}", values))
    return DecisionMatrix(criteria, tuple(alternatives))
