"""Command line interface.

Subcommands: solve, explain, critical, contrast, render, serve. Exit codes:
0 success, 1 map load/parse error, 2 solver failure, 3 invalid focus, type,
or action pair, 4 service bind failure. Set CPLANNER_LOG to error, info, or
debug to control diagnostics on stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import socket
import sys
from typing import Optional, Tuple

from .documents import (
    encode_value,
    explanation_to_doc,
    policy_doc,
    values_doc,
)
from .errors import (
    ActionNotEnabledError,
    ConvergenceError,
    ExplanationError,
    MapFormatError,
    NoEnabledActionsError,
    RouteError,
    UnknownStateError,
)
from .estimators import ContrastiveExplainer
from .mapformat import parse_map
from .mdp import CellKind, GridMap, MoveAction, build_grid_mdp
from .solver import is_unreachable
from .textgen import ExplanationType

LOG = logging.getLogger("cplanner")

PROPERTY_CHOICES = {
    "min-distance": ("expected-reward", "min"),
    "max-distance": ("expected-reward", "max"),
    "min-reach": ("reach-probability", "min"),
    "max-reach": ("reach-probability", "max"),
}

ARROWS = {
    MoveAction.NORTH: "↑",
    MoveAction.EAST: "→",
    MoveAction.SOUTH: "↓",
    MoveAction.WEST: "←",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--map", required=True, dest="map_path",
                        help="path to a grid map file")
    common.add_argument("--alpha", type=float, default=0.0,
                        help="criticality threshold (default 0)")
    common.add_argument("--property", choices=sorted(PROPERTY_CHOICES),
                        default="min-distance",
                        help="what to optimize (default min-distance)")
    common.add_argument("--tolerance", type=float, default=1e-6)
    common.add_argument("--max-iterations", type=int, default=100_000)
    common.add_argument("--format", choices=["text", "structured"],
                        default="text")
    common.add_argument("--seed", type=int, default=0,
                        help="random seed for sampling commands")

    parser = argparse.ArgumentParser(
        prog="cplanner",
        description="Plan stochastic grid routes and explain them contrastively.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", parents=[common],
                           help="print per-state values and policy arrows")
    solve.set_defaults(handler=cmd_solve)

    explain = sub.add_parser("explain", parents=[common],
                             help="generate a route explanation")
    explain.add_argument("--type", dest="explanation_type", default="contrastive",
                         help="none, naive-one, responsibility, constrictive, "
                              "naive-path, selective, or contrastive")
    explain.add_argument("--state", type=int, default=None,
                         help="focus state for single-state explanation types")
    explain.set_defaults(handler=cmd_explain)

    critical = sub.add_parser("critical", parents=[common],
                              help="list critical states with impact bounds")
    critical.set_defaults(handler=cmd_critical)

    contrast = sub.add_parser("contrast", parents=[common],
                              help="contrast two actions at a critical state")
    contrast.add_argument("--state", type=int, required=True)
    contrast.add_argument("--chosen", required=True)
    contrast.add_argument("--alt", required=True)
    contrast.set_defaults(handler=cmd_contrast)

    render = sub.add_parser("render", parents=[common],
                            help="draw the map with route arrows and critical marks")
    render.set_defaults(handler=cmd_render)

    serve = sub.add_parser("serve", parents=[common],
                           help="serve the map over HTTP")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8080)
    serve.add_argument("--ui", default=None,
                       help="directory of explorer UI files to serve at /")
    serve.set_defaults(handler=cmd_serve)
    return parser


def _configure_logging():
    level_name = os.environ.get("CPLANNER_LOG", "error").strip().lower()
    level = {"error": logging.ERROR, "info": logging.INFO,
             "debug": logging.DEBUG}.get(level_name, logging.ERROR)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s",
                        force=True)


def _load_grid(args) -> GridMap:
    with open(args.map_path, "r", encoding="utf-8") as handle:
        grid = parse_map(handle)
    LOG.info("loaded %dx%d map from %s", grid.width, grid.height, args.map_path)
    return grid


def _fit(args) -> Tuple[GridMap, ContrastiveExplainer]:
    grid = _load_grid(args)
    kind, direction = PROPERTY_CHOICES[args.property]
    explainer = ContrastiveExplainer(
        alpha=args.alpha,
        property_kind=kind,
        direction=direction,
        tolerance=args.tolerance,
        max_iterations=args.max_iterations,
    ).fit(build_grid_mdp(grid))
    LOG.info(
        "solved in %d iterations (residual %.3g), %d critical states",
        explainer.values_.iterations,
        explainer.values_.residual,
        len(explainer.report_.critical.members),
    )
    LOG.debug("seed %d", args.seed)
    return grid, explainer


def _emit(args, doc: dict, text: str):
    if args.format == "structured":
        print(json.dumps(doc, indent=2))
    elif text:
        print(text)


def _format_number(value: float) -> str:
    return "unreachable" if is_unreachable(value) else f"{value:.3f}"


def cmd_solve(args) -> int:
    _, explainer = _fit(args)
    values = explainer.values_
    policy = explainer.policy_
    lines = []
    for state in sorted(values.values):
        action = policy.action(state)
        arrow = "-" if action is None else ARROWS.get(action, str(action))
        lines.append(f"g{state} {_format_number(values.value(state))} {arrow}")
    doc = {"command": "solve", **values_doc(values), **policy_doc(policy)}
    _emit(args, doc, "\n".join(lines))
    return 0


def cmd_explain(args) -> int:
    try:
        kind = ExplanationType(args.explanation_type)
    except ValueError:
        raise ExplanationError(
            f"unknown explanation type {args.explanation_type!r}"
        )
    _, explainer = _fit(args)
    doc = explainer.explain(kind, args.state)
    payload = {"command": "explain", **explanation_to_doc(doc)}
    _emit(args, payload, doc.text)
    return 0


def cmd_critical(args) -> int:
    _, explainer = _fit(args)
    report = explainer.report_
    rows = []
    lines = []
    for state in sorted(report.critical.members):
        bounds = report.factors(state).bounds
        if is_unreachable(bounds.max_impact):
            gap = float("inf")
        else:
            gap = bounds.max_impact - bounds.min_impact
        rows.append({
            "state": state,
            "min_impact": encode_value(bounds.min_impact),
            "max_impact": encode_value(bounds.max_impact),
            "gap": encode_value(gap),
        })
        lines.append(
            f"g{state} min={_format_number(bounds.min_impact)} "
            f"max={_format_number(bounds.max_impact)} gap={_format_number(gap)}"
        )
    doc = {"command": "critical", "alpha": args.alpha, "critical": rows}
    _emit(args, doc, "\n".join(lines))
    return 0


def cmd_contrast(args) -> int:
    _, explainer = _fit(args)
    try:
        sentence = explainer.contrast(args.state, args.chosen, args.alt)
    except ValueError as exc:
        raise ExplanationError(str(exc))
    doc = {
        "command": "contrast",
        "state": args.state,
        "chosen": args.chosen,
        "alt": args.alt,
        "sentence": sentence,
    }
    _emit(args, doc, sentence)
    return 0


def cmd_render(args) -> int:
    grid, explainer = _fit(args)
    route_actions = dict(explainer.route_.steps)
    critical = explainer.report_.critical
    rows = []
    for row in range(grid.height):
        cells = []
        for col in range(grid.width):
            index = grid.index(row, col)
            kind = grid.cells[index]
            if kind is CellKind.BUILDING:
                glyph = "#"
            elif index in route_actions:
                glyph = ARROWS.get(route_actions[index], "?")
            else:
                glyph = kind.value
            marker = "*" if index in critical else " "
            cells.append(marker + glyph)
        rows.append(cells)
    text = "\n".join(" ".join(cells) for cells in rows)
    doc = {"command": "render", "rows": rows}
    _emit(args, doc, text)
    return 0


def cmd_serve(args) -> int:
    from .service import SessionStore, build_session, create_app

    grid = _load_grid(args)
    session = build_session(grid, alpha=args.alpha, tolerance=args.tolerance,
                            max_iterations=args.max_iterations)
    store = SessionStore(session)
    app = create_app(store, ui_dir=args.ui)

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((args.host, args.port))
    except OSError as exc:
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return 4
    finally:
        probe.close()

    import uvicorn

    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="error")
    except OSError as exc:
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return 4
    return 0


def main(argv: Optional[list] = None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (MapFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConvergenceError, RouteError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ExplanationError, ActionNotEnabledError, UnknownStateError,
            NoEnabledActionsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
