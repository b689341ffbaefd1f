"""Explanation factors derived from a solved navigation MDP.

Three per-state quantities feed the text generator: the impact of each action
(expected successor value), which states are critical (impact spread above a
threshold), and for each action its responsibility (impact excess over the
best alternative) and constrictiveness (future decision points counted over
the action's search tree).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Tuple

from .errors import ActionNotEnabledError, NoEnabledActionsError, UnknownStateError
from .mdp import Action, Mdp, StateId
from .solver import (
    UNREACHABLE,
    Policy,
    ValueTable,
    expected_successor_value,
    is_unreachable,
)


def impact(mdp: Mdp, values: ValueTable, state: StateId, action: Action) -> float:
    """Expected value over the action's successors; UNREACHABLE is absorbing."""
    if state not in mdp.enabled:
        raise UnknownStateError(state)
    if action not in mdp.enabled[state]:
        raise ActionNotEnabledError(state, action)
    return expected_successor_value(mdp, values.values, state, action)


@dataclass(frozen=True)
class ImpactBounds:
    """Impact of every enabled action at one state, with its extremes."""

    state: StateId
    by_action: Mapping[Action, float]
    min_impact: float
    max_impact: float

    def exceeds(self, alpha: float) -> bool:
        """Whether the impact spread is strictly above alpha.

        An unreachable-vs-finite spread exceeds every alpha; two unreachable
        extremes never do. The difference of two unreachable values is never
        formed.
        """
        if is_unreachable(self.min_impact):
            return False
        if is_unreachable(self.max_impact):
            return True
        return self.max_impact - self.min_impact > alpha


def impact_bounds(mdp: Mdp, values: ValueTable, state: StateId) -> ImpactBounds:
    if state not in mdp.enabled:
        raise UnknownStateError(state)
    actions = mdp.enabled[state]
    if not actions:
        raise NoEnabledActionsError(state)
    by_action = {action: impact(mdp, values, state, action) for action in actions}
    spread = list(by_action.values())
    return ImpactBounds(
        state=state,
        by_action=by_action,
        min_impact=min(spread),
        max_impact=max(spread),
    )


@dataclass(frozen=True)
class CriticalSet:
    """States whose action impacts spread more than the threshold."""

    threshold: float
    members: frozenset

    def __contains__(self, state: StateId) -> bool:
        return state in self.members


def critical_states(mdp: Mdp, values: ValueTable, alpha: float) -> CriticalSet:
    """All states where the choice of action matters by more than alpha."""
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    members = set()
    for state in mdp.states:
        if not mdp.enabled[state]:
            continue
        if impact_bounds(mdp, values, state).exceeds(alpha):
            members.add(state)
    return CriticalSet(threshold=alpha, members=frozenset(members))


@dataclass(frozen=True)
class TreeNode:
    state: StateId
    parent: Optional[int]
    via_action: Optional[Action]


@dataclass(frozen=True)
class SearchTree:
    """Prefix tree of the simple paths that start with one fixed action.

    The root expands only through its designated action; deeper nodes expand
    through every enabled action. A successor already on the path from the
    root is pruned, and targets and unreachable states are leaves.
    """

    root_state: StateId
    root_action: Action
    nodes: Tuple[TreeNode, ...]
    edges: Tuple[Tuple[int, Action, int], ...]

    def states(self, include_root: bool = False) -> frozenset:
        """Distinct states in the tree, by default without the root."""
        found = {node.state for node in self.nodes}
        if not include_root:
            found.discard(self.root_state)
        return frozenset(found)


def search_tree(mdp: Mdp, values: ValueTable, state: StateId,
                action: Action) -> SearchTree:
    if state not in mdp.enabled:
        raise UnknownStateError(state)
    if action not in mdp.enabled[state]:
        raise ActionNotEnabledError(state, action)

    nodes = [TreeNode(state=state, parent=None, via_action=None)]
    edges = []
    # Queue entries carry the set of states on the node's root path.
    queue = deque([(0, frozenset({state}))])
    targets = values.spec.targets
    while queue:
        node_index, on_path = queue.popleft()
        node_state = nodes[node_index].state
        if node_index > 0:
            if node_state in targets or values.is_unreachable(node_state):
                continue
        actions = (action,) if node_index == 0 else mdp.enabled[node_state]
        for step in actions:
            for successor, _ in mdp.transitions[(node_state, step)]:
                if successor in on_path:
                    continue
                child_index = len(nodes)
                nodes.append(TreeNode(state=successor, parent=node_index,
                                      via_action=step))
                edges.append((node_index, step, child_index))
                queue.append((child_index, on_path | {successor}))
    return SearchTree(
        root_state=state,
        root_action=action,
        nodes=tuple(nodes),
        edges=tuple(edges),
    )


def constrictiveness(tree: SearchTree, critical: CriticalSet, mdp: Mdp) -> int:
    """Future decision points: enabled-action counts over the tree's distinct
    critical states, the root excluded."""
    return sum(
        len(mdp.enabled[state])
        for state in tree.states(include_root=False)
        if state in critical
    )


def responsibility(mdp: Mdp, values: ValueTable, state: StateId,
                   action: Action) -> float:
    """How much worse this action's impact is than the best at the state.

    Zero when the action attains the minimum (including the all-unreachable
    case, decided by comparison); UNREACHABLE when the action is unreachable
    and some alternative is not.
    """
    bounds = impact_bounds(mdp, values, state)
    if action not in bounds.by_action:
        raise ActionNotEnabledError(state, action)
    own = bounds.by_action[action]
    # Equality, not subtraction: covers the case where own and the minimum
    # are both unreachable.
    if own == bounds.min_impact:
        return 0.0
    if is_unreachable(own):
        return UNREACHABLE
    return own - bounds.min_impact


@dataclass(frozen=True)
class StateFactors:
    """Every per-action factor for one critical state."""

    state: StateId
    chosen: Optional[Action]
    bounds: ImpactBounds
    responsibility: Mapping[Action, float]
    constrictiveness: Mapping[Action, int]
    tree_states: Mapping[Action, frozenset]


@dataclass(frozen=True)
class FactorReport:
    """Factors for every critical state of a solved model."""

    critical: CriticalSet
    per_state: Mapping[StateId, StateFactors]

    def factors(self, state: StateId) -> StateFactors:
        if state not in self.per_state:
            raise UnknownStateError(state)
        return self.per_state[state]


def factor_report(mdp: Mdp, values: ValueTable, policy: Policy,
                  alpha: float) -> FactorReport:
    """Compute responsibility and constrictiveness at every critical state."""
    critical = critical_states(mdp, values, alpha)
    per_state: Dict[StateId, StateFactors] = {}
    for state in sorted(critical.members):
        bounds = impact_bounds(mdp, values, state)
        zeta = {}
        eps = {}
        footprints = {}
        for action in mdp.enabled[state]:
            zeta[action] = responsibility(mdp, values, state, action)
            tree = search_tree(mdp, values, state, action)
            eps[action] = constrictiveness(tree, critical, mdp)
            footprints[action] = tree.states()
        per_state[state] = StateFactors(
            state=state,
            chosen=policy.action(state),
            bounds=bounds,
            responsibility=zeta,
            constrictiveness=eps,
            tree_states=footprints,
        )
    return FactorReport(critical=critical, per_state=per_state)
