"""Genetic search over candidate criterion profiles.

A chromosome is one real value per criterion, a hypothetical location
profile. Its fitness is the net outranking flow it would earn if it were
added to the reference matrix as an extra alternative, so the search
climbs toward profiles that outrank the reference set. Fitness values are
memoized, selection is a biased wheel, and the best individuals are
carried over unchanged.

Determinism contract: a single seeded generator drives every stochastic
draw in a fixed order (selection, then crossover masks, then mutation),
so identical seeds give bit-identical runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import fsum
from typing import Callable, Mapping, Sequence

import numpy as np

from .core import Condition, DecisionMatrix, Direction, PreferenceKind, normalize_weights
from .errors import ValidationError
from .promethee import RankedOrder, ranked_order

__all__ = [
    "GeneBounds",
    "Chromosome",
    "GAConfig",
    "GAReport",
    "FitnessCache",
    "default_bounds",
    "init_population",
    "fitness",
    "select_roulette",
    "crossover",
    "mutate",
    "run",
]


@dataclass(frozen=True)
class GeneBounds:
    """Closed sampling interval per criterion, in criterion units."""

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "intervals",
            tuple((float(lo), float(hi)) for lo, hi in self.intervals),
        )
        for lo, hi in self.intervals:
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValidationError("gene bounds must be finite")
            if lo > hi:
                raise ValidationError(f"gene bounds out of order: [{lo}, {hi}]")

    def __len__(self) -> int:
        return len(self.intervals)

    def contains(self, genes: Sequence[float]) -> bool:
        return len(genes) == len(self.intervals) and all(
            lo <= g <= hi for g, (lo, hi) in zip(genes, self.intervals)
        )


@dataclass(frozen=True)
class Chromosome:
    """A candidate criterion profile, one gene per criterion."""

    genes: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "genes", tuple(float(g) for g in self.genes))


@dataclass(frozen=True)
class GAConfig:
    population_size: int = 50
    generations: int = 200
    crossover_rate: float = 0.9
    mutation_rate: float = 0.05
    elitism_count: int = 2
    seed: int = 0
    duplicate_rejection_attempts: int = 10

    def __post_init__(self) -> None:
        if self.population_size < 1:
            raise ValidationError("population_size must be >= 1")
        if self.generations < 0:
            raise ValidationError("generations must be >= 0")
        for name in ("crossover_rate", "mutation_rate"):
            value = getattr(self, name)
            if not (0.0 <= value <= 1.0):
                raise ValidationError(f"{name} must be in [0, 1], got {value}")
        if not (0 <= self.elitism_count < self.population_size):
            raise ValidationError("elitism_count must satisfy 0 <= elite < population_size")
        if not (0 <= self.seed < 2**64):
            raise ValidationError("seed must be a 64-bit unsigned integer")
        if self.duplicate_rejection_attempts < 1:
            raise ValidationError("duplicate_rejection_attempts must be >= 1")


@dataclass(frozen=True)
class GAReport:
    best_chromosome: Chromosome
    best_fitness: float
    history: tuple[tuple[float, float], ...]  # (best, mean) per generation
    final_ranking: RankedOrder
    final_net_flows: dict[str, float]
    best_profile_by_criterion: dict[str, float]
    cache_stats: tuple[int, int]  # (hits, misses)


class FitnessCache:
    """Memoizes fitness by the exact gene tuple; no tolerance matching."""

    def __init__(self) -> None:
        self._store: dict[tuple[float, ...], float] = {}
        self.hits = 0
        self.misses = 0

    def get_or_compute(
        self, genes: tuple[float, ...], compute: Callable[[], float]
    ) -> float:
        try:
            value = self._store[genes]
        except KeyError:
            value = compute()
            self._store[genes] = value
            self.misses += 1
            return value
        self.hits += 1
        return value

    @property
    def stats(self) -> tuple[int, int]:
        return (self.hits, self.misses)


# ---------------------------------------------------------------------------
# fitness: net flow of the candidate inserted among the reference alternatives


class _FitnessContext:
    """Precomputed arrays for fast candidate-vs-reference evaluation.

    Only the candidate's row and column of the augmented preference matrix
    depend on the candidate, so its net flow reduces to sums of pairwise
    indices against the n reference alternatives divided by n. This equals
    the candidate's net flow in the full (n+1)-alternative computation.
    """

    def __init__(self, reference: DecisionMatrix) -> None:
        normalized = normalize_weights(reference)
        self.values = np.array([a.values for a in normalized.alternatives], dtype=float)
        self.signs = np.array(
            [1.0 if c.direction is Direction.MAXIMIZE else -1.0 for c in normalized.criteria]
        )
        self.weights = np.array([c.weight for c in normalized.criteria])
        self.specs = tuple(c.pref_fn for c in normalized.criteria)
        self.n, self.m = self.values.shape

    def net_flow(self, genes: tuple[float, ...]) -> float:
        if len(genes) != self.m:
            raise ValidationError(f"expected {self.m} genes, got {len(genes)}")
        d = (np.asarray(genes) - self.values) * self.signs  # (n, m), >0 favors candidate
        out = 0.0  # sum over references of pi(candidate, ref)
        inc = 0.0  # sum over references of pi(ref, candidate)
        for j, spec in enumerate(self.specs):
            w = float(self.weights[j])
            if w == 0.0:
                continue
            out += w * float(_pref_array(spec, d[:, j]).sum())
            inc += w * float(_pref_array(spec, -d[:, j]).sum())
        return float(out - inc) / self.n


def _pref_array(spec, d: np.ndarray) -> np.ndarray:
    """Vectorized preference degrees; matches the scalar function pointwise."""
    kind = spec.kind
    pos = d > 0
    if kind is PreferenceKind.USUAL:
        return pos.astype(float)
    if kind is PreferenceKind.U_SHAPE:
        return (d > spec.q).astype(float)
    if kind is PreferenceKind.V_SHAPE:
        return np.where(pos, np.minimum(d / spec.p, 1.0), 0.0)
    if kind is PreferenceKind.LEVEL:
        return np.where(d > spec.p, 1.0, np.where(d > spec.q, 0.5, 0.0))
    if kind is PreferenceKind.LINEAR:
        ramp = (d - spec.q) / (spec.p - spec.q)
        return np.where(d > spec.p, 1.0, np.where(d > spec.q, ramp, 0.0))
    # Gaussian
    return np.where(pos, 1.0 - np.exp(-(d * d) / (2.0 * spec.s * spec.s)), 0.0)


def fitness(
    c: Chromosome,
    reference: DecisionMatrix,
    cache: FitnessCache | None = None,
) -> float:
    """Net flow the candidate earns when appended to the reference matrix."""
    ctx = _FitnessContext(reference)
    if cache is None:
        return ctx.net_flow(c.genes)
    return cache.get_or_compute(c.genes, lambda: ctx.net_flow(c.genes))


# ---------------------------------------------------------------------------
# operators


def default_bounds(
    matrix: DecisionMatrix, conds: Mapping[str, Condition] | None = None
) -> GeneBounds:
    """Per-criterion search intervals.

    A two-sided condition is used verbatim; a one-sided condition clamps
    the observed range on that side; otherwise the interval is the
    observed [min, max] of the column.
    """
    conds = conds or {}
    intervals = []
    for crit in matrix.criteria:
        col = matrix.column(crit.id)
        lo, hi = min(col), max(col)
        cond = conds.get(crit.id)
        if cond is not None:
            if math.isfinite(cond.lo):
                lo = cond.lo
            if math.isfinite(cond.hi):
                hi = cond.hi
            if lo > hi:  # a one-sided bound beyond the observed range
                hi = lo
        intervals.append((lo, hi))
    return GeneBounds(tuple(intervals))


def init_population(
    cfg: GAConfig, bounds: GeneBounds, rng: np.random.Generator | None = None
) -> list[Chromosome]:
    """Uniform per-gene sampling; exact duplicates are re-drawn a bounded
    number of times, then accepted."""
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    seen: set[tuple[float, ...]] = set()
    population: list[Chromosome] = []
    for _ in range(cfg.population_size):
        genes: tuple[float, ...] = ()
        for _attempt in range(cfg.duplicate_rejection_attempts):
            genes = tuple(rng.uniform(lo, hi) for lo, hi in bounds.intervals)
            if genes not in seen:
                break
        seen.add(genes)
        population.append(Chromosome(genes))
    return population


def select_roulette(
    population: Sequence[Chromosome],
    fitnesses: Sequence[float],
    count: int,
    rng: np.random.Generator,
) -> list[Chromosome]:
    """Biased-wheel sampling with replacement.

    Probabilities are proportional to the fitness shifted to be positive
    (f - min + eps, eps being 1e-6 of the range); equal fitnesses
    degenerate to uniform sampling.
    """
    if not population:
        raise ValidationError("cannot select from an empty population")
    if len(fitnesses) != len(population):
        raise ValidationError("fitnesses and population lengths differ")
    if count < 1:
        raise ValidationError("selection count must be >= 1")
    if any(not math.isfinite(f) for f in fitnesses):
        raise ValidationError("fitness values must be finite")
    f = np.asarray(fitnesses, dtype=float)
    span = float(f.max() - f.min())
    if span == 0.0:
        probs = np.full(len(f), 1.0 / len(f))
    else:
        shifted = f - f.min() + 1e-6 * span
        probs = shifted / shifted.sum()
    cum = np.cumsum(probs)
    cum[-1] = 1.0  # guard the top edge against rounding
    picks = []
    for _ in range(count):
        u = rng.random()
        idx = int(np.searchsorted(cum, u, side="right"))
        picks.append(population[min(idx, len(population) - 1)])
    return picks


def crossover(
    p1: Chromosome,
    p2: Chromosome,
    rate: float,
    rng: np.random.Generator,
) -> tuple[Chromosome, Chromosome]:
    """Uniform crossover: with probability ``rate`` exchange genes under an
    independent fair coin per gene, else return copies of the parents.

    Draw order: one uniform for the rate gate, then one uniform per gene
    for the mask (exchange where the draw is < 0.5).
    """
    if len(p1.genes) != len(p2.genes):
        raise ValidationError("parents must have the same number of genes")
    if rng.random() >= rate:
        return p1, p2
    mask = rng.random(len(p1.genes)) < 0.5
    c1 = tuple(b if swap else a for a, b, swap in zip(p1.genes, p2.genes, mask))
    c2 = tuple(a if swap else b for a, b, swap in zip(p1.genes, p2.genes, mask))
    return Chromosome(c1), Chromosome(c2)


def mutate(
    c: Chromosome,
    rate: float,
    bounds: GeneBounds,
    rng: np.random.Generator,
) -> Chromosome:
    """Re-sample each gene uniformly within its interval with probability
    ``rate``. Draw order per gene: one uniform gate, then the new value."""
    if len(c.genes) != len(bounds):
        raise ValidationError("chromosome and bounds lengths differ")
    genes = list(c.genes)
    for j, (lo, hi) in enumerate(bounds.intervals):
        if rng.random() < rate:
            genes[j] = float(rng.uniform(lo, hi))
    return Chromosome(tuple(genes))


# ---------------------------------------------------------------------------
# the full loop


def _condition_penalty(
    genes: tuple[float, ...],
    checks: tuple[tuple[int, Condition], ...],
) -> float:
    violated = sum(1 for j, cond in checks if cond.gap(genes[j]) > 0)
    return -2.0 * violated


def run(
    cfg: GAConfig,
    reference: DecisionMatrix,
    bounds: GeneBounds | None = None,
    conditions: Mapping[str, Condition] | None = None,
    *,
    use_cache: bool = True,
) -> GAReport:
    """Evolve candidate profiles against the reference matrix.

    Each generation: evaluate, carry the best individuals over unchanged,
    select parents on the biased wheel, cross, mutate, and refill to a
    constant population size. When ``conditions`` are given, candidates
    lose 2 fitness points per violated condition, which pushes infeasible
    profiles below every feasible net flow.
    """
    if bounds is None:
        bounds = default_bounds(reference, conditions)
    if len(bounds) != len(reference.criteria):
        raise ValidationError("bounds and criteria lengths differ")

    ctx = _FitnessContext(reference)
    cache = FitnessCache() if use_cache else None
    checks: tuple[tuple[int, Condition], ...] = ()
    if conditions:
        checks = tuple(
            (reference.criterion_index(cid), cond) for cid, cond in conditions.items()
        )

    def score(c: Chromosome) -> float:
        if cache is None:
            base = ctx.net_flow(c.genes)
        else:
            base = cache.get_or_compute(c.genes, lambda: ctx.net_flow(c.genes))
        if checks:
            base += _condition_penalty(c.genes, checks)
        return base

    rng = np.random.default_rng(cfg.seed)
    population = init_population(cfg, bounds, rng)

    history: list[tuple[float, float]] = []
    best_chromosome = population[0]
    best_fitness = -math.inf
    scores: list[float] = []

    for generation in range(cfg.generations + 1):
        scores = [score(c) for c in population]
        gen_best = max(scores)
        history.append((gen_best, fsum(scores) / len(scores)))
        if gen_best > best_fitness:
            best_fitness = gen_best
            best_chromosome = population[scores.index(gen_best)]
        if generation == cfg.generations:
            break

        order = sorted(range(len(population)), key=lambda i: (-scores[i], i))
        elites = [population[i] for i in order[: cfg.elitism_count]]
        n_children = cfg.population_size - cfg.elitism_count
        n_pairs = (n_children + 1) // 2
        parents = select_roulette(population, scores, 2 * n_pairs, rng)
        children: list[Chromosome] = []
        for k in range(n_pairs):
            c1, c2 = crossover(parents[2 * k], parents[2 * k + 1], cfg.crossover_rate, rng)
            children.extend((c1, c2))
        children = children[:n_children]
        children = [mutate(c, cfg.mutation_rate, bounds, rng) for c in children]
        population = elites + children

    width = len(str(len(population)))
    labels = [f"candidate_{i + 1:0{width}d}" for i in range(len(population))]
    final_net_flows = {label: s for label, s in zip(labels, scores)}
    return GAReport(
        best_chromosome=best_chromosome,
        best_fitness=best_fitness,
        history=tuple(history),
        final_ranking=ranked_order(final_net_flows.items()),
        final_net_flows=final_net_flows,
        best_profile_by_criterion={
            c.id: g for c, g in zip(reference.criteria, best_chromosome.genes)
        },
        cache_stats=cache.stats if cache is not None else (0, 0),
    )
