"""Plain-dict documents shared by the CLI structured output and the service.

Every value is JSON-serializable; unreachable extended values become the
string "unreachable".
"""
from __future__ import annotations

from typing import Any, Dict, Optional

from .factors import FactorReport, impact_bounds, responsibility
from .mdp import Action, GridMap, Mdp, MoveAction, StateId
from .solver import Policy, Route, ValueTable, is_unreachable
from .textgen import ExplanationDoc

UNREACHABLE_LITERAL = "unreachable"


def encode_value(value: float):
    return UNREACHABLE_LITERAL if is_unreachable(value) else value


def action_label(action: Action) -> str:
    return action.label if isinstance(action, MoveAction) else str(action)


def parse_action_label(label: str, mdp: Mdp) -> Action:
    """Inverse of action_label against this MDP's action universe."""
    try:
        action = MoveAction.from_label(label)
    except ValueError:
        action = None
    if action is not None and action in mdp.actions:
        return action
    if label in mdp.actions:
        return label
    raise ValueError(f"unknown action {label!r}")


def map_doc(grid: GridMap) -> Dict[str, Any]:
    return {
        "width": grid.width,
        "height": grid.height,
        "p_success": grid.noise.p_success,
        "start": grid.start,
        "destination": grid.destination,
        "cells": [kind.value for kind in grid.cells],
        "masks": {
            str(index): sorted(action_label(a) for a in mask)
            for index, mask in enumerate(grid.masks)
        },
    }


def values_doc(values: ValueTable) -> Dict[str, Any]:
    return {
        "property": {
            "kind": values.spec.kind.value,
            "direction": values.spec.direction.value,
            "targets": sorted(values.spec.targets),
        },
        "values": {str(s): encode_value(v) for s, v in sorted(values.values.items())},
        "residual": values.residual,
        "iterations": values.iterations,
    }


def route_doc(route: Route) -> Dict[str, Any]:
    return {
        "steps": [
            {"state": state, "action": action_label(action)}
            for state, action in route.steps
        ],
        "terminal": route.terminal,
    }


def policy_doc(policy: Policy, route: Optional[Route] = None) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "choices": {
            str(state): None if action is None else action_label(action)
            for state, action in sorted(policy.choices.items())
        }
    }
    if route is not None:
        doc["route"] = route_doc(route)
    return doc


def state_factors_doc(mdp: Mdp, values: ValueTable, policy: Policy,
                      report: FactorReport, state: StateId) -> Dict[str, Any]:
    """Factor document for any state; tree-based fields only when critical."""
    enabled = mdp.enabled[state]
    doc: Dict[str, Any] = {
        "state": state,
        "value": encode_value(values.value(state)),
        "critical": state in report.critical,
        "chosen": None,
        "enabled": [action_label(a) for a in enabled],
        "impact": {},
        "responsibility": {},
    }
    chosen = policy.action(state)
    if chosen is not None:
        doc["chosen"] = action_label(chosen)
    if not enabled:
        return doc

    if state in report.critical:
        factors = report.factors(state)
        doc["impact"] = {
            action_label(a): encode_value(v)
            for a, v in factors.bounds.by_action.items()
        }
        doc["responsibility"] = {
            action_label(a): encode_value(v)
            for a, v in factors.responsibility.items()
        }
        doc["constrictiveness"] = {
            action_label(a): count for a, count in factors.constrictiveness.items()
        }
        doc["tree_states"] = {
            action_label(a): sorted(states)
            for a, states in factors.tree_states.items()
        }
    else:
        bounds = impact_bounds(mdp, values, state)
        doc["impact"] = {
            action_label(a): encode_value(v) for a, v in bounds.by_action.items()
        }
        doc["responsibility"] = {
            action_label(a): encode_value(responsibility(mdp, values, state, a))
            for a in enabled
        }
    return doc


def explanation_to_doc(doc: ExplanationDoc) -> Dict[str, Any]:
    sentences = []
    for sentence in doc.sentences:
        entry: Dict[str, Any] = {"text": sentence.text}
        entry["state"] = sentence.state
        entry["action"] = (
            None if sentence.action is None else action_label(sentence.action)
        )
        entry["connective"] = sentence.connective
        entry["justification"] = (
            None
            if sentence.justification is None
            else {
                "shortest": sentence.justification.shortest,
                "most_flexible": sentence.justification.most_flexible,
            }
        )
        sentences.append(entry)
    return {
        "type": doc.kind.value,
        "text": doc.text,
        "sentences": sentences,
        "missing_justification": doc.missing_justification,
    }
