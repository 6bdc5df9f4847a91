"""Command-line surface: every core operation as a subcommand.

Results are printed as JSON on stdout.  Exit codes: 0 success, 1 domain
error (also reported as a JSON object with ``status: error`` and a
machine-readable ``code``), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from .correction import (
    AlreadyRationalError,
    CostPreset,
    InfeasibleSubsetError,
    correct_strategy1,
    correct_strategy2,
    cost_presets,
)
from .evalharness import ExperimentConfig, emit_csv, run_experiment
from .framework import (
    InvalidFrameworkError,
    caf_to_document,
    parse_caf,
    parse_degrees,
    parse_waf,
)
from .rationality import (
    DEFAULT_CORNER_LIMIT,
    NotRationalError,
    RationalityKind,
    car_cross_check,
    classify_corners,
    is_epsilon_rational,
    is_fully_rational,
    is_rational,
)
from .refinement import refine
from .sampling import sample_weights
from .semantics import (
    ConvergenceError,
    SemanticsId,
    invert_weights,
    is_achievable,
    solve_degrees,
)


def _load_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _semantics(ns) -> SemanticsId:
    return SemanticsId.from_string(ns.semantics)


def _cmd_solve(ns) -> dict:
    waf = parse_waf(_load_text(ns.framework))
    sem = _semantics(ns)
    degrees = solve_degrees(waf, sem)
    return {"status": "ok", "semantics": sem.value, "degrees": degrees}


def _cmd_invert(ns) -> dict:
    graph, degrees = parse_degrees(_load_text(ns.framework))
    sem = _semantics(ns)
    weights = invert_weights(graph, degrees, sem)
    return {
        "status": "ok",
        "semantics": sem.value,
        "weights": weights,
        "achievable": is_achievable(graph, degrees, sem),
    }


def _cmd_check(ns) -> dict:
    caf = parse_caf(_load_text(ns.framework))
    sem = _semantics(ns)
    rational = is_rational(caf, sem)
    fully = is_fully_rational(caf, sem)
    payload: dict = {
        "status": "ok",
        "semantics": sem.value,
        "rational": rational,
        "fully_rational": fully,
    }
    if len(caf.graph.arguments) <= ns.corner_limit:
        status = classify_corners(caf, sem, corner_limit=ns.corner_limit)
        payload.update(
            kind=status.kind.value,
            corners_inside=status.corners_inside,
            corners_total=status.corners_total,
            refinable_axes=sorted(status.refinable_axes),
        )
    else:
        kind = (
            RationalityKind.FULLY_RATIONAL
            if fully
            else RationalityKind.RATIONAL
            if rational
            else RationalityKind.IRRATIONAL
        )
        payload.update(
            kind=kind.value,
            corners_inside=None,
            corners_total=None,
            refinable_axes=None,
        )
    if ns.eps is not None:
        payload["epsilon"] = ns.eps
        payload["epsilon_rational"] = is_epsilon_rational(caf, sem, ns.eps)
    if ns.verify_car and sem is SemanticsId.CAR and len(caf.graph.arguments) <= 6:
        payload["car_cross_check"] = car_cross_check(
            caf, RationalityKind(payload["kind"]), seed=ns.seed
        )
    return payload


def _cmd_refine(ns) -> dict:
    caf = parse_caf(_load_text(ns.framework))
    sem = _semantics(ns)
    report = refine(caf, sem, ns.eps)
    return {
        "status": "ok",
        "semantics": sem.value,
        "epsilon": report.epsilon,
        "iterations": report.iterations,
        "tightened": {
            a: {"old_hi": old, "new_hi": new}
            for a, (old, new) in report.tightened.items()
        },
        "framework": caf_to_document(report.refined),
    }


def _cmd_correct(ns) -> dict:
    caf = parse_caf(_load_text(ns.framework))
    sem = _semantics(ns)
    costs = cost_presets(CostPreset(ns.costs), caf)
    if ns.strategy == 1:
        subset = set(ns.subset.split(",")) if ns.subset else None
        result = correct_strategy1(caf, sem, costs, ns.eps, subset=subset)
    else:
        result = correct_strategy2(
            caf, sem, costs, ns.eps, max_subset_args=ns.max_subset_args
        )
    return {
        "status": "ok",
        "semantics": sem.value,
        "strategy": result.strategy,
        "epsilon": ns.eps,
        "total_cost": result.total_cost,
        "parameter_t": result.parameter_t,
        "modified": sorted(result.modified),
        "subset": sorted(result.subset) if result.subset is not None else None,
        "framework": caf_to_document(result.corrected),
    }


def _cmd_sample(ns) -> dict:
    caf = parse_caf(_load_text(ns.framework))
    sem = _semantics(ns)
    batch = sample_weights(caf, sem, ns.n, max_tries=ns.max_tries, seed=ns.seed)
    return {
        "status": "ok",
        "semantics": sem.value,
        "seed": ns.seed,
        "attempted": batch.attempted,
        "entries": [
            {"weights": e.weights, "degrees": e.degrees, "method": e.method}
            for e in batch.entries
        ],
    }


def _cmd_eval(ns) -> dict:
    if ns.config:
        cfg = ExperimentConfig.from_json(_load_text(ns.config))
    else:
        cfg = ExperimentConfig()
    overrides = {}
    for name in ("n_min", "n_max", "runs_per_n", "eps", "seed"):
        value = getattr(ns, name)
        if value is not None:
            overrides[name] = value
    if ns.semantics:
        overrides["semantics"] = tuple(
            SemanticsId.from_string(s) for s in ns.semantics.split(",")
        )
    if overrides:
        from dataclasses import replace

        cfg = replace(cfg, **overrides)
    rows = run_experiment(cfg)
    if ns.output:
        emit_csv(rows, ns.output)
        return {"status": "ok", "rows_written": len(rows), "path": ns.output}
    return {
        "status": "ok",
        "rows": [
            {
                "n": r.n,
                "seed": r.seed,
                "semantics": r.semantics,
                "strategy": r.strategy,
                "total_cost": r.total_cost,
                "num_modified": r.num_modified,
                "runtime_ms": r.runtime_ms,
            }
            for r in rows
        ],
    }


def _cmd_serve(ns) -> None:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=ns.host, port=ns.port)
    return None


def _add_framework_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("framework", help="path to a framework JSON document ('-' for stdin)")


def _add_semantics_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--semantics", default="hbs", choices=["hbs", "car", "max"],
        help="gradual semantics to use",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cafkit",
        description="Elicitation toolkit for acceptability-degree intervals "
        "in weighted argumentation frameworks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="acceptability degrees of a weighted framework")
    _add_framework_arg(p)
    _add_semantics_arg(p)
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("invert", help="initial weights matching given degrees")
    _add_framework_arg(p)
    _add_semantics_arg(p)
    p.set_defaults(handler=_cmd_invert)

    p = sub.add_parser("check", help="rationality verdict and corner diagnostics")
    _add_framework_arg(p)
    _add_semantics_arg(p)
    p.add_argument("--eps", type=float, default=None, help="also test eps-rationality")
    p.add_argument("--corner-limit", type=int, default=DEFAULT_CORNER_LIMIT)
    p.add_argument("--verify-car", action="store_true",
                   help="cross-check a card-based verdict by rejection sampling (n <= 6)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("refine", help="best refinement of a rational framework")
    _add_framework_arg(p)
    _add_semantics_arg(p)
    p.add_argument("--eps", type=float, default=1e-6)
    p.set_defaults(handler=_cmd_refine)

    p = sub.add_parser("correct", help="repair an irrational framework at minimal cost")
    _add_framework_arg(p)
    _add_semantics_arg(p)
    p.add_argument("--strategy", type=int, default=1, choices=[1, 2])
    p.add_argument("--eps", type=float, default=1e-6)
    p.add_argument("--costs", default="custom",
                   choices=[preset.value for preset in CostPreset],
                   help="cost preset; 'custom' uses the costs stored in the document")
    p.add_argument("--subset", default=None,
                   help="comma-separated argument ids movable by strategy 1")
    p.add_argument("--max-subset-args", type=int, default=None,
                   help="cap on subset size enumerated by strategy 2")
    p.set_defaults(handler=_cmd_correct)

    p = sub.add_parser("sample", help="sample valid initial weights")
    _add_framework_arg(p)
    _add_semantics_arg(p)
    p.add_argument("-n", type=int, default=10, help="number of samples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-tries", type=int, default=200,
                   help="consecutive rejection misses before the staircase fallback")
    p.set_defaults(handler=_cmd_sample)

    p = sub.add_parser("eval", help="run the benchmark harness")
    p.add_argument("--config", default=None, help="JSON config mirroring ExperimentConfig")
    p.add_argument("--n-min", dest="n_min", type=int, default=None)
    p.add_argument("--n-max", dest="n_max", type=int, default=None)
    p.add_argument("--runs", dest="runs_per_n", type=int, default=None)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--semantics", default=None, help="comma-separated subset of hbs,car,max")
    p.add_argument("-o", "--output", default=None, help="CSV output path")
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("serve", help="start the JSON service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(handler=_cmd_serve)

    return parser


_ERROR_CODES = [
    (InvalidFrameworkError, "invalid_framework"),
    (NotRationalError, "not_rational"),
    (AlreadyRationalError, "already_rational"),
    (InfeasibleSubsetError, "infeasible_subset"),
    (ConvergenceError, "non_convergence"),
    (OSError, "io_error"),
    (ValueError, "invalid_value"),
    (RuntimeError, "runtime_error"),
]


def error_code(exc: BaseException) -> str:
    for klass, code in _ERROR_CODES:
        if isinstance(exc, klass):
            return code
    return "error"


def cli_main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload = ns.handler(ns)
    except (ValueError, RuntimeError, OSError) as exc:
        body = {"status": "error", "code": error_code(exc), "message": str(exc)}
        if isinstance(exc, ConvergenceError):
            body["residual"] = exc.residual
        print(json.dumps(body))
        return 1
    if payload is not None:
        print(json.dumps(payload))
    return 0


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
