"""Command-line surface: validate, solve, check, geometry, demo.

Exit codes are a stable contract: 0 success, 1 domain error (infeasible
input, bad solver options, dimension over limit), 2 I/O or parse error.
The literal problem path "demo" loads the built-in junction.  In exact
mode repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import permutations
from string import ascii_uppercase

from . import geometry, hfs, model, pareto, solvers

FRONTIER_DIVISIONS = 6


class CommandError(Exception):
    def __init__(self, message: str, exit_code: int = 1):
        super().__init__(message)
        self.exit_code = exit_code


def _fmt(value) -> str:
    return model.format_scalar(value)


def _dec(value) -> str:
    return f"{float(value):.3f}"


def _point_json(point) -> dict:
    return {"frac": [_fmt(v) for v in point], "dec": [float(v) for v in point]}


def _load_problem(path: str, mode: str) -> model.NodeProblem:
    if path == "demo":
        text = model.problem_to_json(model.demo_problem())
    else:
        try:
            with open(path) as handle:
                text = handle.read()
        except OSError as exc:
            raise CommandError(f"cannot read {path}: {exc}", exit_code=2)
    try:
        return model.problem_from_json(text, mode)
    except (json.JSONDecodeError, ValueError, ArithmeticError) as exc:
        raise CommandError(f"cannot parse {path}: {exc}", exit_code=2)


def _require_valid(problem: model.NodeProblem):
    errors = [d for d in model.validate(problem) if d.severity == "error"]
    if errors:
        raise CommandError(
            "invalid problem: " + "; ".join(d.message for d in errors)
        )


def _parse_scalar_list(text: str, mode: str, what: str) -> list:
    try:
        return [model.parse_scalar(tok.strip(), mode) for tok in text.split(",")]
    except (ValueError, ArithmeticError) as exc:
        raise CommandError(f"bad {what} {text!r}: {exc}")


def cmd_validate(args) -> int:
    problem = _load_problem(args.problem, args.mode)
    diagnostics = model.validate(problem)
    for diag in diagnostics:
        print(f"{diag.severity}: {diag.message}")
    if not diagnostics:
        print("ok")
    return 1 if any(d.severity == "error" for d in diagnostics) else 0


def _solver_result(problem, args):
    if args.solver == "inm":
        if args.order is not None:
            raise CommandError("--order is only valid with --solver greedy")
        weights = (
            _parse_scalar_list(args.alpha, args.mode, "--alpha")
            if args.alpha is not None else [1] * problem.n_in
        )
        try:
            return "INM", "inm", solvers.solve_inm(problem, weights)
        except ValueError as exc:
            raise CommandError(str(exc))
    if args.solver == "greedy":
        if args.alpha is not None:
            raise CommandError("--alpha is only valid with --solver inm")
        if args.order is None:
            raise CommandError("--solver greedy requires --order")
        labels = [tok.strip() for tok in args.order.split(",")]
        try:
            order = [problem.incoming_index(label) for label in labels]
            return "Gr", "greedy", solvers.solve_greedy(problem, order)
        except (KeyError, ValueError) as exc:
            raise CommandError(f"bad --order: {exc}")
    if args.alpha is not None or args.order is not None:
        raise CommandError("--alpha/--order are not valid with --solver flowmax")
    return "FM", "flowmax", solvers.solve_flowmax(problem)


def cmd_solve(args) -> int:
    problem = _load_problem(args.problem, args.mode)
    _require_valid(problem)
    name, kind, result = _solver_result(problem, args)
    holding_free = hfs.is_hfs(problem, result.flows)
    probe = pareto.is_pareto_optimal(problem, result.flows)

    if args.format == "json":
        payload = {
            "solver": args.solver,
            "flows": [
                {"label": link.label, "frac": _fmt(q), "dec": float(q)}
                for link, q in zip(problem.incoming, result.flows)
            ],
            "total": {"frac": _fmt(result.total), "dec": float(result.total)},
            "holding_free": holding_free,
            "pareto_optimal": probe.pareto_optimal,
            "iterations": result.iterations,
            "trace": [
                {
                    "waypoint": _point_json(step.waypoint),
                    "event": step.event,
                    "removed_links": sorted(step.removed_links),
                }
                for step in result.trace
            ],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"solver: {args.solver}")
        print("flows:")
        for link, q in zip(problem.incoming, result.flows):
            print(f"  {link.label} = {_fmt(q)} ({_dec(q)})")
        print(f"total: {_fmt(result.total)} ({_dec(result.total)})")
        print(f"holding-free: {'yes' if holding_free else 'no'}")
        print(f"pareto-optimal: {'yes' if probe.pareto_optimal else 'no'}")
        print("trace:")
        for k, step in enumerate(result.trace, start=1):
            point = ", ".join(_fmt(v) for v in step.waypoint)
            print(f"  k={k} [{point}] {step.event}")

    if args.scene:
        geometry.export_scene(problem, [(name, kind, result)], [], args.scene)
    return 0


def cmd_check(args) -> int:
    problem = _load_problem(args.problem, args.mode)
    _require_valid(problem)
    flows = _parse_scalar_list(args.flows, args.mode, "flow vector")
    if len(flows) != problem.n_in:
        raise CommandError(
            f"{len(flows)} flows for {problem.n_in} incoming links"
        )

    report = hfs.hfs_residual(problem, flows)
    if not report.feasible:
        slack = model.slacks(problem, flows)
        print("infeasible flow vector; slacks:")
        for link, s in zip(problem.incoming, slack.incoming):
            print(f"  demand {link.label}: {_fmt(s)}")
        for link, s in zip(problem.outgoing, slack.outgoing):
            print(f"  supply {link.label}: {_fmt(s)}")
        return 1

    probe = pareto.is_pareto_optimal(problem, flows)
    if args.format == "json":
        payload = {
            "feasible": True,
            "holding_free": report.holding_free,
            "residual": {"frac": _fmt(report.residual), "dec": float(report.residual)},
            "terms": [
                {
                    "link": t.link,
                    "demand_slack": _fmt(t.demand_slack),
                    "supply_slack_product": _fmt(t.supply_slack_product),
                    "term": _fmt(t.term),
                }
                for t in report.per_link_terms
            ],
            "pareto_optimal": probe.pareto_optimal,
            "margin": {"frac": _fmt(probe.margin), "dec": float(probe.margin)},
            "witness": _point_json(probe.witness) if probe.witness else None,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"holding-free: {'yes' if report.holding_free else 'no'}")
        print(f"residual: {_fmt(report.residual)}")
        for t in report.per_link_terms:
            print(
                f"  {t.link}: demand slack {_fmt(t.demand_slack)} x "
                f"supply product {_fmt(t.supply_slack_product)} = {_fmt(t.term)}"
            )
        print(f"pareto-optimal: {'yes' if probe.pareto_optimal else 'no'}")
        print(f"margin: {_fmt(probe.margin)} ({_dec(probe.margin)})")
        if probe.witness:
            point = ", ".join(_fmt(v) for v in probe.witness)
            print(f"witness: [{point}]")
    return 0


def _geometry_results(problem, weights) -> list[tuple]:
    results = [("INM", "inm", solvers.solve_inm(problem, weights))]
    seen = {results[0][2].flows}

    def letters():
        for ch in ascii_uppercase:
            yield ch
        i = 0
        while True:
            yield str(i)
            i += 1

    fm_letters = letters()
    for vertex in solvers.enumerate_flowmax_optima(problem):
        if vertex in seen:
            continue
        seen.add(vertex)
        results.append((f"FM-{next(fm_letters)}", "flowmax", vertex))

    gr_letters = letters()
    for order in permutations(range(problem.n_in)):
        flows = solvers.solve_greedy(problem, order).flows
        if flows in seen:
            continue
        seen.add(flows)
        results.append((f"Gr-{next(gr_letters)}", "greedy", flows))
    return results


def cmd_geometry(args) -> int:
    problem = _load_problem(args.problem, args.mode)
    _require_valid(problem)
    try:
        polytope = geometry.enumerate_vertices(problem)
    except ValueError as exc:
        raise CommandError(str(exc))

    if args.format == "json":
        payload = {
            "dimension": polytope.dimension,
            "vertices": [_point_json(v) for v in polytope.vertices],
            "facets": [
                {"label": f.label, "vertex_ids": list(f.vertex_ids)}
                for f in polytope.facets
            ],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"{len(polytope.vertices)} vertices:")
        for idx, vertex in enumerate(polytope.vertices):
            point = ", ".join(_fmt(v) for v in vertex)
            decs = ", ".join(_dec(v) for v in vertex)
            print(f"  v{idx} [{point}] ({decs})")

    if args.scene:
        weights = (
            _parse_scalar_list(args.alpha, args.mode, "--alpha")
            if args.alpha is not None else [1] * problem.n_in
        )
        try:
            results = _geometry_results(problem, weights)
        except ValueError as exc:
            raise CommandError(str(exc))
        frontier = []
        if problem.n_in <= 3:
            samples = pareto.feasible_grid(problem, FRONTIER_DIVISIONS)
            frontier = pareto.classify_frontier(problem, samples)
        geometry.export_scene(problem, results, frontier, args.scene)
        print(f"scene written to {args.scene}")
    return 0


def cmd_demo(args) -> int:
    text = model.problem_to_json(model.demo_problem())
    if args.output == "-":
        sys.stdout.write(text)
        return 0
    import os
    if os.path.exists(args.output) and not args.force:
        raise CommandError(f"{args.output} exists; use --force to overwrite")
    try:
        with open(args.output, "w") as handle:
            handle.write(text)
    except OSError as exc:
        raise CommandError(f"cannot write {args.output}: {exc}", exit_code=2)
    print(f"demo problem written to {args.output}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nodeflow",
        description="Junction flow allocation: solvers, holding-free and "
                    "Pareto checks, polytope geometry export.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a problem file")
    p.add_argument("problem")
    p.add_argument("--mode", choices=["exact", "float"], default="exact")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="run a solver on a problem")
    p.add_argument("problem")
    p.add_argument("--solver", choices=["inm", "greedy", "flowmax"], required=True)
    p.add_argument("--alpha", help="comma-separated merging weights (inm)")
    p.add_argument("--order", help="comma-separated incoming labels (greedy)")
    p.add_argument("--mode", choices=["exact", "float"], default="exact")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.add_argument("--scene", help="write a scene JSON alongside")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="holding-free and Pareto verdicts for a flow vector")
    p.add_argument("problem")
    p.add_argument("flows", help="comma-separated flows, one per incoming link")
    p.add_argument("--mode", choices=["exact", "float"], default="exact")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("geometry", help="enumerate polytope vertices, export scene")
    p.add_argument("problem")
    p.add_argument("--scene", help="write a scene JSON with solver markers")
    p.add_argument("--alpha", help="merging weights for the scene's INM marker")
    p.add_argument("--mode", choices=["exact", "float"], default="exact")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_geometry)

    p = sub.add_parser("demo", help="write the built-in demo problem file")
    p.add_argument("-o", "--output", default="demo.json", help='path, or "-" for stdout')
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_demo)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
