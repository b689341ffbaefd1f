"""Contrastive route planning for stochastic grid navigation.

Parse a grid map, solve it for minimum expected travel distance, find the
states where the choice of action matters, and explain the policy in plain
sentences, from a one-line answer up to a full contrastive paragraph.
"""
from importlib import resources as _resources

from .errors import (
    ActionNotEnabledError,
    ConvergenceError,
    ExplanationError,
    MapFormatError,
    NoEnabledActionsError,
    PlannerError,
    RouteError,
    UnknownStateError,
)
from .estimators import ContrastiveExplainer, ValueIterationSolver, check_mdp
from .factors import (
    CriticalSet,
    FactorReport,
    ImpactBounds,
    SearchTree,
    StateFactors,
    TreeNode,
    constrictiveness,
    critical_states,
    factor_report,
    impact,
    impact_bounds,
    responsibility,
    search_tree,
)
from .mapformat import parse_map, serialize_map
from .mdp import (
    Action,
    CellKind,
    GridMap,
    Mdp,
    MotionNoise,
    MoveAction,
    StateId,
    build_grid_mdp,
    enabled_actions,
)
from .solver import (
    UNREACHABLE,
    Direction,
    MonteCarloResult,
    Policy,
    PropertyKind,
    PropertySpec,
    Route,
    SolverConfig,
    ValueTable,
    extract_policy,
    is_unreachable,
    monte_carlo_estimate,
    nominal_route,
    states_reaching,
    value_iteration,
)
from .textgen import (
    ExplanationDoc,
    ExplanationType,
    JustificationSet,
    Sentence,
    action_phrase,
    connective,
    contrast_sentence,
    generate,
    justification,
)

__version__ = "0.1.0"


def reference_map_path() -> str:
    """Filesystem path of the bundled reference map."""
    return str(_resources.files("cplanner").joinpath("data/reference.map"))
