"""Natural-language route explanations.

Seven explanation styles over a solved model, from silence to a full
contrastive paragraph. Sentences follow one grammar:

    {Connective}, we move {direction} at [critical ]grid {id}[ because it
    leads to the {justification}].

plus the fixed closer "All other decisions result in equivalent routes." for
the selective styles.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from .errors import ActionNotEnabledError, ExplanationError
from .factors import FactorReport
from .mdp import Action, MoveAction, StateId
from .solver import Route, is_unreachable

TRAILING_SENTENCE = "All other decisions result in equivalent routes."


class ExplanationType(Enum):
    NONE = "none"
    NAIVE_ONE = "naive-one"
    RESPONSIBILITY = "responsibility"
    CONSTRICTIVE = "constrictive"
    NAIVE_PATH = "naive-path"
    SELECTIVE = "selective"
    CONTRASTIVE = "contrastive"


@dataclass(frozen=True)
class JustificationSet:
    """Which preference claims hold for a chosen action at a critical state."""

    shortest: bool
    most_flexible: bool

    def phrase(self) -> Optional[str]:
        if self.shortest and self.most_flexible:
            return "shortest and most flexible future route"
        if self.shortest:
            return "shortest route"
        if self.most_flexible:
            return "most flexible future route"
        return None


@dataclass(frozen=True)
class Sentence:
    text: str
    state: Optional[StateId] = None
    action: Optional[Action] = None
    connective: Optional[str] = None
    justification: Optional[JustificationSet] = None


@dataclass(frozen=True)
class ExplanationDoc:
    kind: ExplanationType
    sentences: Tuple[Sentence, ...]
    missing_justification: bool = False

    @property
    def text(self) -> str:
        return " ".join(sentence.text for sentence in self.sentences)


def action_phrase(action: Action) -> str:
    """Human wording for an action: compass label or the opaque name."""
    return action.label if isinstance(action, MoveAction) else str(action)


def connective(position: int, total: int) -> str:
    """Sentence opener for the given position: First, then alternating
    Next/Then, closing with Finally."""
    if position < 0 or position >= total:
        raise ValueError(f"position {position} outside 0..{total - 1}")
    if position == 0:
        return "First"
    if position == total - 1:
        return "Finally"
    return "Next" if position % 2 == 1 else "Then"


def justification(state: StateId, chosen: Action,
                  report: FactorReport) -> JustificationSet:
    """Decide which preference claims the chosen action earns.

    shortest: the chosen action carries zero responsibility while some
    alternative carries more. most_flexible: at least one alternative has a
    finite impact, and the chosen action strictly out-counts every such
    alternative on future decision points.
    """
    if state not in report.critical:
        raise ExplanationError(f"state {state} is not critical")
    factors = report.factors(state)
    if chosen not in factors.bounds.by_action:
        raise ActionNotEnabledError(state, chosen)

    zeta = factors.responsibility
    shortest = zeta[chosen] == 0 and any(
        zeta[action] > 0 for action in zeta if action != chosen
    )

    finite_alternatives = [
        action
        for action, value in factors.bounds.by_action.items()
        if action != chosen and not is_unreachable(value)
    ]
    eps = factors.constrictiveness
    most_flexible = bool(finite_alternatives) and all(
        eps[chosen] > eps[action] for action in finite_alternatives
    )
    return JustificationSet(shortest=shortest, most_flexible=most_flexible)


def _move_clause(route: Route, state: StateId) -> Tuple[Action, str]:
    action = route.action_at(state)
    if action is None:
        raise ExplanationError(f"state {state} is not on the route")
    return action, action_phrase(action)


def generate(kind: ExplanationType, route: Route, report: FactorReport,
             focus: Optional[StateId] = None) -> ExplanationDoc:
    """Produce the explanation document of the requested style."""
    if kind is ExplanationType.NONE:
        return ExplanationDoc(kind, ())

    if kind in (ExplanationType.NAIVE_ONE, ExplanationType.RESPONSIBILITY,
                ExplanationType.CONSTRICTIVE):
        if focus is None:
            raise ExplanationError(f"{kind.value} explanation requires a focus state")
        action, phrase = _move_clause(route, focus)
        text = f"We move {phrase} at grid {focus}."
        if kind is ExplanationType.RESPONSIBILITY:
            text = (f"We move {phrase} at grid {focus} "
                    "because it leads to the shortest route.")
        elif kind is ExplanationType.CONSTRICTIVE:
            text = (f"We move {phrase} at grid {focus} "
                    "because it leads to the most flexible future route.")
        return ExplanationDoc(kind, (Sentence(text, focus, action),))

    if kind is ExplanationType.NAIVE_PATH:
        sentences = []
        total = len(route.steps)
        for position, (state, action) in enumerate(route.steps):
            opener = connective(position, total)
            text = f"{opener}, we move {action_phrase(action)} at grid {state}."
            sentences.append(Sentence(text, state, action, opener))
        return ExplanationDoc(kind, tuple(sentences))

    if kind in (ExplanationType.SELECTIVE, ExplanationType.CONTRASTIVE):
        picked = [
            (state, action)
            for state, action in route.steps
            if state in report.critical
        ]
        sentences = []
        missing = False
        total = len(picked)
        for position, (state, action) in enumerate(picked):
            opener = connective(position, total)
            claims = None
            clause = ""
            if kind is ExplanationType.CONTRASTIVE:
                claims = justification(state, action, report)
                phrase = claims.phrase()
                if phrase is None:
                    missing = True
                else:
                    clause = f" because it leads to the {phrase}"
            text = (f"{opener}, we move {action_phrase(action)} "
                    f"at critical grid {state}{clause}.")
            sentences.append(Sentence(text, state, action, opener, claims))
        sentences.append(Sentence(TRAILING_SENTENCE))
        return ExplanationDoc(kind, tuple(sentences), missing)

    raise ExplanationError(f"unknown explanation type {kind!r}")


def format_quantity(value: float) -> str:
    """At most three decimals, trailing zeros stripped."""
    text = f"{value:.3f}".rstrip("0").rstrip(".")
    return text if text not in ("", "-") else "0"


def contrast_sentence(state: StateId, chosen: Action, alternative: Action,
                      report: FactorReport) -> str:
    """One sentence contrasting the chosen action with an alternative."""
    if state not in report.critical:
        raise ExplanationError(f"state {state} is not critical")
    factors = report.factors(state)
    for action in (chosen, alternative):
        if action not in factors.bounds.by_action:
            raise ActionNotEnabledError(state, action)
    if chosen == alternative:
        raise ExplanationError("chosen and alternative actions must differ")

    chosen_phrase = action_phrase(chosen)
    alt_phrase = action_phrase(alternative)
    lead = f"We move {chosen_phrase} at grid {state} instead of {alt_phrase}"

    zeta = factors.responsibility
    if is_unreachable(zeta[alternative]):
        return f"{lead} because {alt_phrase} leads to a dead end."
    if is_unreachable(zeta[chosen]):
        return f"{lead} because {chosen_phrase} leads to a dead end."

    eps = factors.constrictiveness
    delta = zeta[alternative] - zeta[chosen]
    if delta == 0 and eps[chosen] == eps[alternative]:
        return f"{lead} because {alt_phrase} leads to an equivalent route."
    return (
        f"{lead} because {chosen_phrase} leads to a route that is "
        f"{format_quantity(delta)} grids shorter in expectation and offers "
        f"{eps[chosen]} future decision points versus {eps[alternative]}."
    )
