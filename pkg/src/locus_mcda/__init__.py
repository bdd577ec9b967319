"""Multi-criteria location ranking toolkit.

Ranks alternatives over weighted, directional criteria with outranking
flows (total and partial preorders) and concordance/discordance relation
classification, screens them against feasibility conditions, and searches
for best-compromise criterion profiles with a seeded genetic algorithm
whose fitness is the candidate's net outranking flow against the
reference alternatives.
"""

from .data_io import (
    fixture_path,
    flow_delta_report,
    load_criteria,
    load_flow_table,
    load_matrix,
    load_pi_matrix,
    load_portfolio,
    write_matrix,
    write_report,
    write_text_atomic,
)
from .core import (
    Alternative,
    Condition,
    Criterion,
    DecisionMatrix,
    Direction,
    PreferenceFunctionSpec,
    PreferenceKind,
    conditions_of,
    normalize_weights,
    oriented_deviation,
)
from .electre import (
    ElectreRelation,
    ElectreThresholds,
    OutrankingRelationTable,
    classify,
    concordance,
    discordance,
    outranks,
)
from .errors import McdaError, ParseError, ValidationError
from .ga import (
    Chromosome,
    FitnessCache,
    GAConfig,
    GAReport,
    GeneBounds,
    crossover,
    default_bounds,
    fitness,
    init_population,
    mutate,
    run,
    select_roulette,
)
from .objectives import (
    PortfolioSpec,
    Violation,
    WeightVector,
    constraint_violations,
    expected_return,
    penalized_objective,
    portfolio_variance,
    validate_weights,
)
from .promethee import (
    FlowEntry,
    FlowTable,
    PartialPreorder,
    PreferenceIndexMatrix,
    PrometheeRelation,
    RankedOrder,
    RankEntry,
    flows,
    preference_index,
    preference_index_matrix,
    preference_value,
    rank_promethee_i,
    rank_promethee_ii,
    ranked_order,
)
from .screening import (
    ConditionViolation,
    ScreeningEntry,
    ScreeningReport,
    feasible_subset,
    screen,
)

__version__ = "0.1.0"
