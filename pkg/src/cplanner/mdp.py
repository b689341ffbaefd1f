"""Grid maps and the Markov decision process model built from them.

A grid map is a rectangular field of cells with a per-cell action mask; the
derived MDP has one state per non-building cell, noisy compass moves, and the
destination as its sole absorbing target.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional, Tuple, Union

from .errors import ActionNotEnabledError, UnknownStateError

StateId = int

PROBABILITY_SLACK = 1e-9


class MoveAction(Enum):
    """The four compass moves available on grid maps."""

    NORTH = ("N", "north", -1, 0)
    EAST = ("E", "east", 0, 1)
    SOUTH = ("S", "south", 1, 0)
    WEST = ("W", "west", 0, -1)

    def __init__(self, letter: str, label: str, row_step: int, col_step: int):
        self.letter = letter
        self.label = label
        self.row_step = row_step
        self.col_step = col_step

    @classmethod
    def from_letter(cls, letter: str) -> "MoveAction":
        for action in cls:
            if action.letter == letter:
                return action
        raise ValueError(f"unknown direction letter {letter!r}")

    @classmethod
    def from_label(cls, label: str) -> "MoveAction":
        for action in cls:
            if action.label == label:
                return action
        raise ValueError(f"unknown direction {label!r}")


# General MDPs may use opaque action names alongside compass moves.
Action = Union[MoveAction, str]


class CellKind(Enum):
    """Terrain code of one map cell. The value is its map-file code."""

    START = "S"
    DESTINATION = "D"
    BUILDING = "B"
    DEAD_END = "X"
    URBAN = "U"
    HIGHWAY = "H"


@dataclass(frozen=True)
class MotionNoise:
    """Move outcome model: succeed with p_success, else stay in place."""

    p_success: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.p_success <= 1.0):
            raise ValueError(f"p_success must be in (0, 1], got {self.p_success}")

    @property
    def p_stay(self) -> float:
        return 1.0 - self.p_success


@dataclass(frozen=True)
class GridMap:
    """A parsed grid map: terrain, per-cell action masks, noise, endpoints."""

    width: int
    height: int
    cells: Tuple[CellKind, ...]
    masks: Tuple[frozenset, ...]
    noise: MotionNoise
    start: StateId
    destination: StateId

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("grid dimensions must be positive")
        if len(self.cells) != self.width * self.height:
            raise ValueError("cell count does not match dimensions")
        if len(self.masks) != len(self.cells):
            raise ValueError("mask count does not match cell count")
        self._check_endpoints()
        self._check_masks()

    def _check_endpoints(self):
        starts = [i for i, k in enumerate(self.cells) if k is CellKind.START]
        dests = [i for i, k in enumerate(self.cells) if k is CellKind.DESTINATION]
        if len(dests) != 1 or self.destination != dests[0]:
            raise ValueError("exactly one destination cell is required")
        if self.start == self.destination:
            if starts:
                raise ValueError("combined start/destination excludes a start cell")
        elif len(starts) != 1 or self.start != starts[0]:
            raise ValueError("exactly one start cell is required")

    def _check_masks(self):
        for index, mask in enumerate(self.masks):
            kind = self.cells[index]
            if kind in (CellKind.BUILDING, CellKind.DESTINATION) and mask:
                raise ValueError(f"cell {index} ({kind.value}) must have an empty mask")
            for action in mask:
                neighbor = self.neighbor(index, action)
                if neighbor is None:
                    raise ValueError(f"cell {index}: move {action.label} leaves the grid")
                if self.cells[neighbor] is CellKind.BUILDING:
                    raise ValueError(
                        f"cell {index}: move {action.label} enters a building"
                    )

    def index(self, row: int, col: int) -> StateId:
        return row * self.width + col

    def row(self, index: StateId) -> int:
        return index // self.width

    def col(self, index: StateId) -> int:
        return index % self.width

    def neighbor(self, index: StateId, action: MoveAction) -> Optional[StateId]:
        """Cell one step in the given direction, or None when off-grid."""
        row = self.row(index) + action.row_step
        col = self.col(index) + action.col_step
        if 0 <= row < self.height and 0 <= col < self.width:
            return self.index(row, col)
        return None

    def default_mask(self, index: StateId) -> frozenset:
        """All in-bounds moves that do not enter a building.

        Destination and building cells default to no moves at all.
        """
        kind = self.cells[index]
        if kind in (CellKind.BUILDING, CellKind.DESTINATION):
            return frozenset()
        allowed = []
        for action in MoveAction:
            neighbor = self.neighbor(index, action)
            if neighbor is not None and self.cells[neighbor] is not CellKind.BUILDING:
                allowed.append(action)
        return frozenset(allowed)


@dataclass(frozen=True)
class Mdp:
    """A finite MDP: states, initial state, sparse transitions, rewards, targets."""

    states: Tuple[StateId, ...]
    initial: StateId
    actions: Tuple[Action, ...]
    enabled: Mapping[StateId, Tuple[Action, ...]]
    transitions: Mapping[Tuple[StateId, Action], Tuple[Tuple[StateId, float], ...]]
    rewards: Mapping[Tuple[StateId, Action, StateId], float]
    targets: frozenset

    def __post_init__(self):
        self.validate()

    def validate(self):
        state_set = set(self.states)
        if len(state_set) != len(self.states):
            raise ValueError("duplicate state ids")
        if self.initial not in state_set:
            raise ValueError(f"initial state {self.initial} is not a state")
        if not self.targets <= state_set:
            raise ValueError("targets must be states")
        action_set = set(self.actions)
        for state in self.states:
            if state not in self.enabled:
                raise ValueError(f"state {state} has no enabled-actions entry")
            acts = self.enabled[state]
            if state in self.targets and acts:
                raise ValueError(f"target state {state} must have no enabled actions")
            for action in acts:
                if action not in action_set:
                    raise ValueError(f"state {state}: action {action!r} not in universe")
                pairs = self.transitions.get((state, action))
                if not pairs:
                    raise ValueError(f"({state}, {action!r}) has no transitions")
                total = 0.0
                for successor, probability in pairs:
                    if successor not in state_set:
                        raise ValueError(
                            f"({state}, {action!r}) reaches unknown state {successor}"
                        )
                    # Sparse entries must carry real mass; a zero would also
                    # poison extended-value sums (0 * inf).
                    if not (0.0 < probability <= 1.0):
                        raise ValueError(
                            f"({state}, {action!r}, {successor}) probability "
                            f"{probability} outside (0, 1]"
                        )
                    reward = self.rewards.get((state, action, successor))
                    if reward is None:
                        raise ValueError(
                            f"missing reward for ({state}, {action!r}, {successor})"
                        )
                    if not math.isfinite(reward):
                        raise ValueError(
                            f"reward for ({state}, {action!r}, {successor}) not finite"
                        )
                    total += probability
                if abs(total - 1.0) > PROBABILITY_SLACK:
                    raise ValueError(
                        f"({state}, {action!r}) probabilities sum to {total}"
                    )

    def successors(self, state: StateId, action: Action):
        if state not in self.enabled:
            raise UnknownStateError(state)
        if action not in self.enabled[state]:
            raise ActionNotEnabledError(state, action)
        return self.transitions[(state, action)]

    def reward(self, state: StateId, action: Action, successor: StateId) -> float:
        return self.rewards[(state, action, successor)]

    def action_index(self, action: Action) -> int:
        """Position in the action universe; the deterministic tie-break order."""
        return self.actions.index(action)


def enabled_actions(mdp: Mdp, state: StateId) -> Tuple[Action, ...]:
    """Actions enabled at a state. Empty for targets and trapped states."""
    if state not in mdp.enabled:
        raise UnknownStateError(state)
    return mdp.enabled[state]


def build_grid_mdp(grid: GridMap) -> Mdp:
    """Construct the navigation MDP for a grid map.

    One state per non-building cell, keeping the cell index as the state id.
    Every masked move costs one reward unit whether it succeeds or self-loops;
    the destination is the single absorbing target.
    """
    states = tuple(
        index for index, kind in enumerate(grid.cells) if kind is not CellKind.BUILDING
    )
    p_success = grid.noise.p_success
    enabled = {}
    transitions = {}
    rewards = {}
    for state in states:
        moves = tuple(action for action in MoveAction if action in grid.masks[state])
        enabled[state] = moves
        for action in moves:
            neighbor = grid.neighbor(state, action)
            if p_success >= 1.0:
                transitions[(state, action)] = ((neighbor, 1.0),)
            else:
                transitions[(state, action)] = (
                    (neighbor, p_success),
                    (state, grid.noise.p_stay),
                )
                rewards[(state, action, state)] = 1.0
            rewards[(state, action, neighbor)] = 1.0
    return Mdp(
        states=states,
        initial=grid.start,
        actions=tuple(MoveAction),
        enabled=enabled,
        transitions=transitions,
        rewards=rewards,
        targets=frozenset({grid.destination}),
    )
