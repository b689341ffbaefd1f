"""HTTP facade over one solved map session.

A session is an immutable snapshot (map, values, policy, factor report,
route, alpha, revision). Config changes build a fresh snapshot and swap it in
atomically, so concurrent readers always see one coherent revision.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, replace
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .documents import (
    explanation_to_doc,
    map_doc,
    parse_action_label,
    policy_doc,
    state_factors_doc,
)
from .errors import (
    ActionNotEnabledError,
    ExplanationError,
    PlannerError,
    UnknownStateError,
)
from .estimators import ContrastiveExplainer
from .factors import FactorReport, factor_report
from .mdp import GridMap, Mdp, build_grid_mdp
from .solver import Policy, Route, ValueTable
from .textgen import ExplanationType, contrast_sentence, generate

VALID_TYPES = sorted(kind.value for kind in ExplanationType)


@dataclass(frozen=True)
class Session:
    grid: GridMap
    mdp: Mdp
    values: ValueTable
    policy: Policy
    report: FactorReport
    route: Route
    alpha: float
    revision: int


def build_session(grid: GridMap, alpha: float = 0.0, tolerance: float = 1e-6,
                  max_iterations: int = 100_000) -> Session:
    """Solve a map once and package everything the routes need."""
    mdp = build_grid_mdp(grid)
    explainer = ContrastiveExplainer(
        alpha=alpha, tolerance=tolerance, max_iterations=max_iterations
    ).fit(mdp)
    return Session(
        grid=grid,
        mdp=mdp,
        values=explainer.values_,
        policy=explainer.policy_,
        report=explainer.report_,
        route=explainer.route_,
        alpha=alpha,
        revision=1,
    )


def retune_session(session: Session, alpha: float) -> Session:
    """New snapshot with a different alpha; values and policy are unchanged."""
    report = factor_report(session.mdp, session.values, session.policy, alpha)
    return replace(
        session, report=report, alpha=alpha, revision=session.revision + 1
    )


class SessionStore:
    """Holds the one live session; swaps are atomic under a lock."""

    def __init__(self, session: Optional[Session] = None):
        self._session = session
        self._lock = threading.Lock()

    @property
    def current(self) -> Optional[Session]:
        return self._session

    def swap_alpha(self, alpha: float) -> Session:
        with self._lock:
            if self._session is None:
                raise UnknownStateError("session")
            updated = retune_session(self._session, alpha)
            self._session = updated
            return updated


class ExplainRequest(BaseModel):
    type: str
    state: Optional[int] = None


class ConfigRequest(BaseModel):
    alpha: float


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"detail": message})


def create_app(store: SessionStore, ui_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="cplanner service", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def malformed_request(request: Request, exc: RequestValidationError):
        return _error(400, "malformed request body or parameters")

    class NoSessionError(Exception):
        pass

    def session_or_404() -> Session:
        session = store.current
        if session is None:
            raise NoSessionError("no session loaded")
        return session

    @app.exception_handler(NoSessionError)
    async def no_session(request: Request, exc: NoSessionError):
        return _error(404, str(exc))

    @app.get("/api/health")
    def health():
        session = store.current
        return {
            "status": "ok",
            "revision": None if session is None else session.revision,
        }

    @app.get("/api/map")
    def get_map():
        session = session_or_404()
        doc = map_doc(session.grid)
        doc["revision"] = session.revision
        return doc

    @app.get("/api/policy")
    def get_policy():
        session = session_or_404()
        doc = policy_doc(session.policy, session.route)
        doc["revision"] = session.revision
        return doc

    @app.get("/api/states/{state_id}/factors")
    def get_state_factors(state_id: int):
        session = session_or_404()
        if state_id not in session.mdp.enabled:
            return _error(404, f"unknown state {state_id}")
        doc = state_factors_doc(
            session.mdp, session.values, session.policy, session.report, state_id
        )
        doc["revision"] = session.revision
        return doc

    @app.post("/api/explain")
    def post_explain(body: ExplainRequest):
        session = session_or_404()
        try:
            kind = ExplanationType(body.type)
        except ValueError:
            return _error(
                400, f"unknown explanation type {body.type!r}; "
                     f"valid types: {', '.join(VALID_TYPES)}"
            )
        try:
            doc = generate(kind, session.route, session.report, body.state)
        except (ExplanationError, ActionNotEnabledError, UnknownStateError) as exc:
            return _error(400, str(exc))
        payload = explanation_to_doc(doc)
        payload["revision"] = session.revision
        return payload

    @app.get("/api/contrast")
    def get_contrast(state: int, chosen: str, alt: str):
        session = session_or_404()
        if state not in session.mdp.enabled:
            return _error(404, f"unknown state {state}")
        try:
            chosen_action = parse_action_label(chosen, session.mdp)
            alt_action = parse_action_label(alt, session.mdp)
            sentence = contrast_sentence(
                state, chosen_action, alt_action, session.report
            )
        except (ValueError, ExplanationError, ActionNotEnabledError) as exc:
            return _error(400, str(exc))
        return {
            "state": state,
            "chosen": chosen,
            "alt": alt,
            "sentence": sentence,
            "revision": session.revision,
        }

    @app.put("/api/config")
    def put_config(body: ConfigRequest):
        if not math.isfinite(body.alpha) or body.alpha < 0:
            return _error(400, "alpha must be a finite non-negative number")
        session_or_404()
        session = store.swap_alpha(body.alpha)
        return {
            "alpha": session.alpha,
            "critical": sorted(session.report.critical.members),
            "revision": session.revision,
        }

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    return app
