"""Exact solvers and checkers for transferable-utility cooperative games."""

from .allocation import Allocation
from .coalition import coalition, format_coalition, grand, indicator, members
from .core import (
    BalancedWeighting,
    CoreConstruction3p,
    CoreReport,
    ThreePlayerStats,
    check_balancing_inequality,
    construct_core_element_3p,
    core_nonempty,
    core_nonempty_3p,
    in_core,
    is_convex_3p_closed_form,
    three_player_stats,
)
from .encouragement import (
    AllocationScheme,
    EncouragementReport,
    PmasReport,
    encourages_on,
    induced_scheme,
    is_pmas,
)
from .errors import CapExceeded, ConvexityViolation, GameFileError, GameInputError, PreconditionError
from .game import (
    Game,
    GameAggregates,
    aggregates,
    is_convex,
    is_convex_3p_inequalities,
    is_essential,
    is_superadditive,
    marginal_contribution,
    subgame,
    to_rational,
    value,
)
from .gamefile import format_game, load_game, parse_game
from .generators import GeneratorConfig, Mode, generate
from .solutions import (
    SolutionMethod,
    flatten,
    marginal_vector,
    max_marginal_average,
    predecessors,
    shapley_by_permutations,
    shapley_by_subsets,
    solve,
    tau,
)

__version__ = "0.1.0"
