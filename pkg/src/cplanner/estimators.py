"""Estimator-style front door: configure, fit on an MDP, then query.

Both classes follow the scikit-learn protocol: hyperparameters are stored
verbatim in __init__, fitting computes trailing-underscore attributes and
returns self, and get_params/set_params/clone work out of the box.
"""
from __future__ import annotations

from typing import List, Optional, Sequence, Union

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .documents import parse_action_label, state_factors_doc
from .factors import FactorReport, factor_report
from .mdp import Action, Mdp, StateId
from .solver import (
    Direction,
    Policy,
    PropertyKind,
    PropertySpec,
    Route,
    SolverConfig,
    ValueTable,
    extract_policy,
    monte_carlo_estimate,
    nominal_route,
    value_iteration,
)
from .textgen import ExplanationDoc, ExplanationType, contrast_sentence, generate


def check_mdp(mdp) -> Mdp:
    """Validate an estimator input is a well-formed MDP."""
    if not isinstance(mdp, Mdp):
        raise TypeError(f"expected an Mdp, got {type(mdp).__name__}")
    mdp.validate()
    return mdp


def _check_fitted(estimator, attributes: Sequence[str]):
    missing = [name for name in attributes if not hasattr(estimator, name)]
    if missing:
        raise NotFittedError(
            f"{type(estimator).__name__} is not fitted yet; call fit(mdp) first"
        )


class ValueIterationSolver(BaseEstimator):
    """Solve an MDP for a reachability or expected-reward property.

    Parameters mirror the solver configuration; fitting runs value iteration
    and extracts the impact-optimal policy.
    """

    def __init__(self, property_kind: str = "expected-reward",
                 direction: str = "min", tolerance: float = 1e-6,
                 max_iterations: int = 100_000):
        self.property_kind = property_kind
        self.direction = direction
        self.tolerance = tolerance
        self.max_iterations = max_iterations

    def _spec(self, mdp: Mdp) -> PropertySpec:
        return PropertySpec(
            PropertyKind(self.property_kind),
            Direction(self.direction),
            frozenset(mdp.targets),
        )

    def fit(self, mdp: Mdp, y=None) -> "ValueIterationSolver":
        mdp = check_mdp(mdp)
        config = SolverConfig(self.tolerance, self.max_iterations)
        self.mdp_ = mdp
        self.values_: ValueTable = value_iteration(mdp, self._spec(mdp), config)
        self.policy_: Policy = extract_policy(mdp, self.values_)
        return self

    def predict(self, states: Optional[Sequence[StateId]] = None) -> List[float]:
        """Per-state property values, for all states unless a subset is given."""
        _check_fitted(self, ("values_",))
        if states is None:
            states = self.mdp_.states
        return [self.values_.value(state) for state in states]

    def route(self, start: Optional[StateId] = None) -> Route:
        _check_fitted(self, ("policy_",))
        return nominal_route(self.mdp_, self.policy_, start)

    def simulate(self, episodes: int = 100_000, seed: int = 0,
                 start: Optional[StateId] = None):
        """Monte-Carlo cross-check of the fitted value at a state."""
        _check_fitted(self, ("policy_",))
        return monte_carlo_estimate(
            self.mdp_, self.policy_, self.values_.spec, episodes, seed, start
        )


class ContrastiveExplainer(BaseEstimator):
    """Solve an MDP and explain its policy contrastively.

    alpha is the impact-spread threshold above which a state counts as
    critical; the remaining parameters configure the underlying solver.
    """

    def __init__(self, alpha: float = 0.0, property_kind: str = "expected-reward",
                 direction: str = "min", tolerance: float = 1e-6,
                 max_iterations: int = 100_000):
        self.alpha = alpha
        self.property_kind = property_kind
        self.direction = direction
        self.tolerance = tolerance
        self.max_iterations = max_iterations

    def fit(self, mdp: Mdp, y=None) -> "ContrastiveExplainer":
        if self.alpha < 0:
            raise ValueError("alpha must be non-negative")
        mdp = check_mdp(mdp)
        solver = ValueIterationSolver(
            property_kind=self.property_kind,
            direction=self.direction,
            tolerance=self.tolerance,
            max_iterations=self.max_iterations,
        ).fit(mdp)
        self.mdp_ = mdp
        self.values_ = solver.values_
        self.policy_ = solver.policy_
        self.report_: FactorReport = factor_report(
            mdp, self.values_, self.policy_, self.alpha
        )
        self.route_: Route = nominal_route(mdp, self.policy_)
        return self

    def explain(self, kind: Union[str, ExplanationType] = "contrastive",
                focus: Optional[StateId] = None) -> ExplanationDoc:
        _check_fitted(self, ("report_", "route_"))
        if not isinstance(kind, ExplanationType):
            kind = ExplanationType(kind)
        return generate(kind, self.route_, self.report_, focus)

    def contrast(self, state: StateId, chosen: Union[str, Action],
                 alternative: Union[str, Action]) -> str:
        _check_fitted(self, ("report_",))
        if isinstance(chosen, str):
            chosen = parse_action_label(chosen, self.mdp_)
        if isinstance(alternative, str):
            alternative = parse_action_label(alternative, self.mdp_)
        return contrast_sentence(state, chosen, alternative, self.report_)

    def transform(self, states: Optional[Sequence[StateId]] = None) -> List[dict]:
        """Per-state factor documents (plain dicts), all states by default."""
        _check_fitted(self, ("report_",))
        if states is None:
            states = self.mdp_.states
        return [
            state_factors_doc(self.mdp_, self.values_, self.policy_,
                              self.report_, state)
            for state in states
        ]

    @property
    def critical_ids_(self):
        _check_fitted(self, ("report_",))
        return sorted(self.report_.critical.members)
