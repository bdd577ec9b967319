"""Mean-variance evaluators: expected portfolio return, portfolio variance,
and weight-feasibility checks.

These are evaluators and validators only, not a solver. The optional
target return and variance budget are check parameters; violations can be
folded into a penalized score usable as a search fitness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ValidationError

__all__ = [
    "PortfolioSpec",
    "WeightVector",
    "Violation",
    "expected_return",
    "portfolio_variance",
    "validate_weights",
    "constraint_violations",
    "penalized_objective",
]

#: Number of random directions used to check positive semidefiniteness.
_PSD_SAMPLES = 64
_PSD_SEED = 20120601


@dataclass(frozen=True)
class PortfolioSpec:
    """Expected returns, covariance, and optional target/budget checks."""

    mu: tuple[float, ...]
    cov: tuple[tuple[float, ...], ...]
    target_return: float | None = None
    variance_budget: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", tuple(float(x) for x in self.mu))
        object.__setattr__(
            self, "cov", tuple(tuple(float(x) for x in row) for row in self.cov)
        )
        n = len(self.mu)
        if n == 0:
            raise ValidationError("portfolio needs at least one asset")
        c = np.asarray(self.cov, dtype=float)
        if c.shape != (n, n):
            raise ValidationError(
                f"covariance shape {c.shape} does not match {n} expected returns"
            )
        if not np.all(np.isfinite(c)) or not all(np.isfinite(self.mu)):
            raise ValidationError("portfolio parameters must be finite")
        if np.abs(c - c.T).max() > 1e-12:
            raise ValidationError("covariance matrix must be symmetric (tolerance 1e-12)")
        # PSD check by sampled quadratic forms on random unit directions.
        rng = np.random.default_rng(_PSD_SEED)
        scale = max(1.0, float(np.abs(c).max()))
        for _ in range(_PSD_SAMPLES):
            d = rng.normal(size=n)
            d /= np.linalg.norm(d)
            if float(d @ c @ d) < -1e-9 * scale:
                raise ValidationError("covariance matrix is not positive semidefinite")

    @property
    def size(self) -> int:
        return len(self.mu)


@dataclass(frozen=True)
class WeightVector:
    """Asset weights. Feasibility is reported by :func:`validate_weights`,
    not enforced here, so invalid vectors can be inspected."""

    w: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "w", tuple(float(x) for x in self.w))


@dataclass(frozen=True)
class Violation:
    """One violated constraint with its magnitude.

    ``index`` is the 1-based position of the offending weight for
    nonnegativity violations, and None for aggregate constraints.
    """

    constraint: str
    magnitude: float
    index: int | None = None


def _as_array(w: WeightVector | Sequence[float]) -> np.ndarray:
    values = w.w if isinstance(w, WeightVector) else w
    return np.asarray(values, dtype=float)


def expected_return(w: WeightVector | Sequence[float], p: PortfolioSpec) -> float:
    """Weighted sum of the assets' expected returns."""
    arr = _as_array(w)
    if arr.shape != (p.size,):
        raise ValidationError(f"expected {p.size} weights, got {arr.shape}")
    return float(arr @ np.asarray(p.mu))


def portfolio_variance(w: WeightVector | Sequence[float], p: PortfolioSpec) -> float:
    """Quadratic form of the weights against the covariance matrix."""
    arr = _as_array(w)
    if arr.shape != (p.size,):
        raise ValidationError(f"expected {p.size} weights, got {arr.shape}")
    return float(arr @ np.asarray(p.cov) @ arr)


def validate_weights(
    w: WeightVector | Sequence[float], *, sum_tol: float = 1e-9
) -> list[Violation]:
    """Check the simplex constraints; an empty list means the vector is ok."""
    arr = _as_array(w)
    violations: list[Violation] = []
    gap = float(arr.sum() - 1.0)
    if abs(gap) > sum_tol:
        violations.append(Violation("sum-to-one", abs(gap)))
    for i, x in enumerate(arr, start=1):
        if x < 0:
            violations.append(Violation("nonnegative", float(-x), index=i))
    return violations


def constraint_violations(
    w: WeightVector | Sequence[float], p: PortfolioSpec
) -> list[Violation]:
    """Weight constraints plus the optional return/variance targets."""
    violations = validate_weights(w)
    if p.target_return is not None:
        gap = abs(expected_return(w, p) - p.target_return)
        if gap > 1e-12:
            violations.append(Violation("target-return", gap))
    if p.variance_budget is not None:
        gap = abs(portfolio_variance(w, p) - p.variance_budget)
        if gap > 1e-12:
            violations.append(Violation("variance-budget", gap))
    return violations


def penalized_objective(
    w: WeightVector | Sequence[float],
    p: PortfolioSpec,
    *,
    penalty_weight: float = 1000.0,
) -> float:
    """Expected return minus ``penalty_weight`` per unit of constraint
    violation; usable directly as a maximization fitness."""
    total = sum(v.magnitude for v in constraint_violations(w, p))
    return expected_return(w, p) - penalty_weight * total
