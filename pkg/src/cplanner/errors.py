"""Exception hierarchy shared across the package."""


class PlannerError(Exception):
    """Base class for all errors raised by this package."""


class MapFormatError(PlannerError):
    """A map file could not be parsed or failed a semantic check.

    Carries the 1-based line and column where the problem was detected.
    """

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}" if line else message)


class UnknownStateError(PlannerError):
    """A state id does not exist in the model."""

    def __init__(self, state):
        self.state = state
        super().__init__(f"unknown state {state!r}")


class ActionNotEnabledError(PlannerError):
    """An action was requested at a state where it is not enabled."""

    def __init__(self, state, action):
        self.state = state
        self.action = action
        super().__init__(f"action {action!r} is not enabled at state {state!r}")


class NoEnabledActionsError(PlannerError):
    """A per-action quantity was requested at a state with no enabled actions."""

    def __init__(self, state):
        self.state = state
        super().__init__(f"state {state!r} has no enabled actions")


class ConvergenceError(PlannerError):
    """Value iteration failed to reach the residual tolerance."""

    def __init__(self, residual: float, iterations: int):
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"no convergence after {iterations} iterations (residual {residual!r})"
        )


class RouteError(PlannerError):
    """A nominal route could not be extracted from the policy."""


class ExplanationError(PlannerError):
    """An explanation request was invalid (bad focus, type, or action pair)."""
