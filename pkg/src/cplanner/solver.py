"""Fixed-point solvers for navigation MDPs.

Values live in the extended domain: a finite non-negative real, or
``UNREACHABLE`` (+inf) for states that cannot reach a target. Arithmetic is
absorbing over positive-probability sums; the difference of two unreachable
values is never formed, comparisons are used instead.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Mapping, Optional, Tuple

import numpy as np

from .errors import ConvergenceError, RouteError, UnknownStateError
from .mdp import Action, Mdp, StateId

UNREACHABLE = math.inf


def is_unreachable(value: float) -> bool:
    return math.isinf(value)


class PropertyKind(Enum):
    EXPECTED_CUMULATIVE_REWARD = "expected-reward"
    REACHABILITY_PROBABILITY = "reach-probability"


class Direction(Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"


@dataclass(frozen=True)
class PropertySpec:
    """What to compute: which quantity, optimized which way, toward which targets."""

    kind: PropertyKind
    direction: Direction
    targets: frozenset

    def __post_init__(self):
        if not self.targets:
            raise ValueError("property targets must be nonempty")

    @classmethod
    def min_cost(cls, targets) -> "PropertySpec":
        """Minimum expected cumulative reward until a target is reached."""
        return cls(PropertyKind.EXPECTED_CUMULATIVE_REWARD, Direction.MINIMIZE,
                   frozenset(targets))

    @classmethod
    def reach_probability(cls, targets, direction=Direction.MAXIMIZE) -> "PropertySpec":
        return cls(PropertyKind.REACHABILITY_PROBABILITY, direction, frozenset(targets))


@dataclass(frozen=True)
class SolverConfig:
    tolerance: float = 1e-6
    max_iterations: int = 100_000

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations <= 0:
            raise ValueError("max_iterations must be positive")


@dataclass(frozen=True)
class ValueTable:
    """Converged per-state values for one property."""

    spec: PropertySpec
    values: Mapping[StateId, float]
    residual: float
    iterations: int

    def value(self, state: StateId) -> float:
        if state not in self.values:
            raise UnknownStateError(state)
        return self.values[state]

    def is_unreachable(self, state: StateId) -> bool:
        return is_unreachable(self.value(state))


@dataclass(frozen=True)
class Policy:
    """Memoryless deterministic policy; None where no action is defined."""

    choices: Mapping[StateId, Optional[Action]]

    def action(self, state: StateId) -> Optional[Action]:
        return self.choices.get(state)


@dataclass(frozen=True)
class Route:
    """The most-likely trajectory of a policy: (state, action) steps."""

    steps: Tuple[Tuple[StateId, Action], ...]
    terminal: StateId

    def states(self) -> Tuple[StateId, ...]:
        return tuple(state for state, _ in self.steps) + (self.terminal,)

    def action_at(self, state: StateId) -> Optional[Action]:
        for step_state, action in self.steps:
            if step_state == state:
                return action
        return None


@dataclass(frozen=True)
class MonteCarloResult:
    mean: float
    stderr: float
    episodes: int
    used: int
    censored: int


def states_reaching(mdp: Mdp, targets) -> frozenset:
    """States with a positive-probability path into the target set."""
    predecessors: Dict[StateId, set] = {s: set() for s in mdp.states}
    for state in mdp.states:
        for action in mdp.enabled[state]:
            for successor, _ in mdp.transitions[(state, action)]:
                predecessors[successor].add(state)
    seen = set(t for t in targets)
    queue = deque(seen)
    while queue:
        current = queue.popleft()
        for pred in predecessors[current]:
            if pred not in seen:
                seen.add(pred)
                queue.append(pred)
    return frozenset(seen)


def expected_successor_value(mdp: Mdp, values: Mapping[StateId, float],
                             state: StateId, action: Action) -> float:
    """Probability-weighted successor value; absorbing over UNREACHABLE."""
    total = 0.0
    for successor, probability in mdp.transitions[(state, action)]:
        value = values[successor]
        if is_unreachable(value):
            return UNREACHABLE
        total += probability * value
    return total


def _backup(mdp: Mdp, values: Mapping[StateId, float], state: StateId,
            action: Action, with_reward: bool) -> float:
    total = 0.0
    for successor, probability in mdp.transitions[(state, action)]:
        value = values[successor]
        if is_unreachable(value):
            return UNREACHABLE
        reward = mdp.rewards[(state, action, successor)] if with_reward else 0.0
        total += probability * (reward + value)
    return total


def _change(old: float, new: float) -> float:
    if is_unreachable(old) and is_unreachable(new):
        return 0.0
    if is_unreachable(old) or is_unreachable(new):
        return UNREACHABLE
    return abs(new - old)


def value_iteration(mdp: Mdp, spec: PropertySpec,
                    config: Optional[SolverConfig] = None) -> ValueTable:
    """Iterate Bellman backups to the fixed point of the given property.

    Expected-reward targets are pinned at 0 and support-unreachable states at
    UNREACHABLE before iteration; reachability targets are pinned at 1.
    Raises ConvergenceError when the max-norm residual never falls under the
    tolerance.
    """
    config = config or SolverConfig()
    state_set = set(mdp.states)
    for target in spec.targets:
        if target not in state_set:
            raise UnknownStateError(target)

    expected_reward = spec.kind is PropertyKind.EXPECTED_CUMULATIVE_REWARD
    if expected_reward:
        reaching = states_reaching(mdp, spec.targets)
        values = {
            state: (0.0 if state in reaching else UNREACHABLE)
            for state in mdp.states
        }
    else:
        values = {state: 0.0 for state in mdp.states}
    for target in spec.targets:
        values[target] = 0.0 if expected_reward else 1.0

    work = [
        state for state in mdp.states
        if state not in spec.targets
        and not is_unreachable(values[state])
        and mdp.enabled[state]
    ]
    if not work:
        return ValueTable(spec, values, 0.0, 0)

    pick = min if spec.direction is Direction.MINIMIZE else max
    residual = UNREACHABLE
    for iteration in range(1, config.max_iterations + 1):
        residual = 0.0
        updated = dict(values)
        for state in work:
            candidates = [
                _backup(mdp, values, state, action, expected_reward)
                for action in mdp.enabled[state]
            ]
            new_value = pick(candidates)
            residual = max(residual, _change(values[state], new_value))
            updated[state] = new_value
        values = updated
        if residual <= config.tolerance:
            return ValueTable(spec, values, residual, iteration)
    raise ConvergenceError(residual, config.max_iterations)


def extract_policy(mdp: Mdp, values: ValueTable) -> Policy:
    """Pick the impact-optimal action per state, matching the property direction.

    Ties go to the smallest action index in the MDP's action universe. States
    with no enabled actions, and states whose best action still leads nowhere,
    get None.
    """
    minimize = values.spec.direction is Direction.MINIMIZE
    choices: Dict[StateId, Optional[Action]] = {}
    for state in mdp.states:
        actions = mdp.enabled[state]
        if not actions:
            choices[state] = None
            continue
        best_action = None
        best_value = None
        for action in sorted(actions, key=mdp.action_index):
            value = expected_successor_value(mdp, values.values, state, action)
            if best_action is None:
                best_action, best_value = action, value
            elif minimize and value < best_value:
                best_action, best_value = action, value
            elif not minimize and value > best_value:
                best_action, best_value = action, value
        if best_value is not None and is_unreachable(best_value):
            best_action = None
        choices[state] = best_action
    return Policy(choices)


def nominal_route(mdp: Mdp, policy: Policy, start: Optional[StateId] = None) -> Route:
    """Follow the policy through most-likely successors until a target.

    Self-loop successors are skipped; ties go to the smallest state index.
    Raises RouteError if no target is reached within |S| steps or the policy
    has no way forward.
    """
    current = mdp.initial if start is None else start
    if current not in set(mdp.states):
        raise UnknownStateError(current)
    steps = []
    while current not in mdp.targets:
        if len(steps) >= len(mdp.states):
            raise RouteError(f"no target within {len(mdp.states)} steps; policy loops")
        action = policy.action(current)
        if action is None:
            raise RouteError(f"policy undefined at state {current}")
        forward = [
            (successor, probability)
            for successor, probability in mdp.transitions[(current, action)]
            if successor != current
        ]
        if not forward:
            raise RouteError(f"state {current} only loops onto itself")
        forward.sort(key=lambda pair: (-pair[1], pair[0]))
        steps.append((current, action))
        current = forward[0][0]
    return Route(steps=tuple(steps), terminal=current)


def monte_carlo_estimate(mdp: Mdp, policy: Policy, spec: PropertySpec,
                         episodes: int = 100_000, seed: int = 0,
                         start: Optional[StateId] = None) -> MonteCarloResult:
    """Estimate the property by simulating the policy with a seeded generator.

    Episodes are capped at 10*|S| divided by the largest self-loop probability
    along the policy (10*|S| when the policy chain has no self-loops). Episodes
    that hit the cap are censored: excluded from the sample and reported.
    Episodes that deterministically strand (no action available) count as
    censored for expected-reward estimates and as zeroes for reachability.
    """
    if episodes < 1:
        raise ValueError("episodes must be positive")
    origin = mdp.initial if start is None else start
    if origin not in set(mdp.states):
        raise UnknownStateError(origin)
    for target in spec.targets:
        if target not in set(mdp.states):
            raise UnknownStateError(target)

    index = {state: i for i, state in enumerate(mdp.states)}
    count = len(mdp.states)
    is_target = np.zeros(count, dtype=bool)
    for target in spec.targets:
        is_target[index[target]] = True

    succ_rows, prob_rows, reward_rows = [], [], []
    movable = np.zeros(count, dtype=bool)
    stay_max = 0.0
    for state in mdp.states:
        action = None if state in spec.targets else policy.action(state)
        if action is None:
            succ_rows.append([index[state]])
            prob_rows.append([1.0])
            reward_rows.append([0.0])
            continue
        movable[index[state]] = True
        pairs = mdp.transitions[(state, action)]
        succ_rows.append([index[s2] for s2, _ in pairs])
        prob_rows.append([p for _, p in pairs])
        reward_rows.append([mdp.rewards[(state, action, s2)] for s2, _ in pairs])
        for successor, probability in pairs:
            if successor == state:
                stay_max = max(stay_max, probability)

    width = max(len(row) for row in succ_rows)
    successor_at = np.zeros((count, width), dtype=np.int64)
    cumulative = np.ones((count, width))
    reward_at = np.zeros((count, width))
    for i, (ss, pp, rr) in enumerate(zip(succ_rows, prob_rows, reward_rows)):
        successor_at[i, :len(ss)] = ss
        successor_at[i, len(ss):] = ss[-1]
        cum = np.cumsum(pp)
        cum[-1] = 1.0
        cumulative[i, :len(pp)] = cum
        reward_at[i, :len(rr)] = rr

    cap = math.ceil(10 * count / stay_max) if stay_max > 0 else 10 * count
    rng = np.random.default_rng(seed)

    state = np.full(episodes, index[origin], dtype=np.int64)
    total = np.zeros(episodes)
    reached = is_target[state].copy()
    trapped = ~reached & ~movable[state]
    active = ~reached & ~trapped
    for _ in range(cap):
        if not active.any():
            break
        rows = state[active]
        draws = rng.random(rows.shape[0])
        pick = (draws[:, None] >= cumulative[rows]).sum(axis=1)
        pick = np.minimum(pick, width - 1)
        total[active] += reward_at[rows, pick]
        landed = successor_at[rows, pick]
        state[active] = landed
        arrived = is_target[landed]
        stuck = ~arrived & ~movable[landed]
        active_idx = np.flatnonzero(active)
        reached[active_idx[arrived]] = True
        trapped[active_idx[stuck]] = True
        active[active_idx[arrived | stuck]] = False
    capped = active.copy()

    if spec.kind is PropertyKind.EXPECTED_CUMULATIVE_REWARD:
        used_mask = reached
        censored = int(trapped.sum() + capped.sum())
        sample = total[used_mask]
    else:
        used_mask = reached | trapped
        censored = int(capped.sum())
        sample = reached[used_mask].astype(float)

    used = int(used_mask.sum())
    if used == 0:
        return MonteCarloResult(UNREACHABLE, 0.0, episodes, 0, censored)
    mean = float(sample.mean())
    stderr = float(sample.std(ddof=1) / math.sqrt(used)) if used > 1 else 0.0
    return MonteCarloResult(mean, stderr, episodes, used, censored)
