"""Geometric vocabulary: intercepts, merging lines, vertices, scene export.

The feasible set of a node problem is a polytope in incoming-flow space.
This module provides the hand-drawing toolkit for it — axis intercepts of
constraint planes, parametric merging-weight lines and their first wall
hits, exhaustive vertex enumeration — plus a deterministic JSON scene
format carrying everything a renderer needs to reproduce the diagrams.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import model
from .model import HalfSpace, NodeProblem, Scalar, exact_div
from .pareto import FrontierSample

SCENE_VERSION = 1
DIMENSION_LIMIT = 6


@dataclass(frozen=True)
class ParametricLine:
    """base + p·direction, p ranging over all reals."""

    base: tuple
    direction: tuple

    def __post_init__(self):
        if not any(d != 0 for d in self.direction):
            raise ValueError("line direction must not be all zero")

    def at(self, p: Scalar) -> tuple:
        return tuple(b + p * d for b, d in zip(self.base, self.direction))


@dataclass(frozen=True)
class InterceptForm:
    """Axis intercepts b/a_i of a constraint plane; None marks an unbounded axis.

    ``degenerate`` flags planes through the origin (zero bound with a
    nonzero coefficient), which have no intercept form.
    """

    intercepts: tuple
    degenerate: bool = False


@dataclass(frozen=True)
class Facet:
    label: str
    vertex_ids: tuple[int, ...]


@dataclass(frozen=True)
class Polytope:
    vertices: tuple[tuple, ...]
    facets: tuple[Facet, ...]
    dimension: int


@dataclass(frozen=True)
class Marker:
    name: str
    point: tuple
    kind: str


@dataclass(frozen=True)
class TracePolyline:
    name: str
    points: tuple[tuple, ...]


@dataclass(frozen=True)
class Scene:
    problem: NodeProblem
    polytope: Polytope
    markers: tuple[Marker, ...] = ()
    traces: tuple[TracePolyline, ...] = ()
    frontier: tuple[FrontierSample, ...] = ()
    metadata: dict = field(default_factory=dict)


def intercept_form(space: HalfSpace) -> InterceptForm:
    """Axis intercepts of a·q = b: axis i crosses at b/a_i when a_i > 0."""
    if space.bound == 0 and any(c != 0 for c in space.coefficients):
        return InterceptForm(
            intercepts=tuple(None for _ in space.coefficients), degenerate=True
        )
    return InterceptForm(
        intercepts=tuple(
            exact_div(space.bound, c) if c > 0 else None for c in space.coefficients
        ),
    )


def merging_line(base: Sequence, weights: Sequence, active: Iterable[int]) -> ParametricLine:
    """Line through base moving only the active links, each at its weight."""
    active = set(active)
    if not active:
        raise ValueError("active set must not be empty")
    if len(base) != len(weights):
        raise ValueError("base and weights differ in length")
    direction = tuple(
        weights[i] if i in active else 0 for i in range(len(weights))
    )
    return ParametricLine(base=tuple(base), direction=direction)


def line_halfspace_hit(line: ParametricLine, space: HalfSpace) -> Scalar | None:
    """Smallest p ≥ 0 where the line meets a·q = b, or None when it never does.

    Only crossings in the constraint's outward direction count: the
    directional derivative a·direction must be positive.
    """
    slope = space.evaluate(line.direction)
    if slope <= 0:
        return None
    p = exact_div(space.bound - space.evaluate(line.base), slope)
    if p < 0:
        return None
    return p


def _solve_square(rows: Sequence[Sequence], rhs: Sequence) -> list | None:
    """Gaussian elimination on a square system; None when singular."""
    n = len(rhs)
    aug = [list(rows[k]) + [rhs[k]] for k in range(n)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            return None
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        aug[col] = [exact_div(v, pivot) for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def enumerate_vertices(problem: NodeProblem, dimension_limit: int = DIMENSION_LIMIT) -> Polytope:
    """All polytope vertices by exhaustive square-subset solving.

    Every |I|-subset of {nonnegativity, demand, active supply} constraints
    is solved as an equality system; feasible solutions are vertices.
    Exhaustion over C(#constraints, |I|) subsets is fine at desk scale,
    hence the dimension limit.  Vertices are deduplicated by exact
    coordinates and sorted lexicographically; every active constraint
    keeps a facet entry listing the vertices binding it.
    """
    n = problem.n_in
    if n > dimension_limit:
        raise ValueError(f"dimension {n} exceeds limit {dimension_limit}")
    spaces = [s for s in model.constraint_halfspaces(problem) if s.active]
    tolerance = model.default_tolerance(problem)

    found = set()
    for subset in combinations(spaces, n):
        solution = _solve_square(
            [s.coefficients for s in subset], [s.bound for s in subset]
        )
        if solution is None:
            continue
        if model.is_feasible(problem, solution, tolerance):
            found.add(tuple(solution))

    vertices = tuple(sorted(found))
    facets = tuple(
        Facet(
            label=space.label,
            vertex_ids=tuple(
                idx for idx, v in enumerate(vertices)
                if space.is_binding(v, tolerance)
            ),
        )
        for space in spaces
    )
    return Polytope(vertices=vertices, facets=facets, dimension=n)


# ---------------------------------------------------------------------------
# scene assembly and (de)serialization

def build_scene(problem: NodeProblem, results: Sequence[tuple] = (),
                frontier_samples: Sequence[FrontierSample] = (),
                metadata: dict | None = None,
                dimension_limit: int = DIMENSION_LIMIT) -> Scene:
    """Compose a scene from solver results.

    ``results`` holds (name, kind, payload) triples where the payload is a
    SolverResult or a bare flow vector; each contributes a marker at its
    flows, and incremental-transfer results (kind "inm") additionally
    contribute their waypoint polyline from the origin.  All referenced
    points must be feasible.
    """
    polytope = enumerate_vertices(problem, dimension_limit)
    tolerance = model.default_tolerance(problem)

    markers = []
    traces = []
    for name, kind, payload in results:
        flows = getattr(payload, "flows", None)
        if flows is None:
            flows = tuple(payload)
        if not model.is_feasible(problem, flows, tolerance):
            raise ValueError(f"result {name!r} has infeasible flows")
        markers.append(Marker(name=name, point=tuple(flows), kind=kind))
        if kind == "inm" and hasattr(payload, "trace"):
            origin = tuple(0 * x for x in flows)
            points = [origin]
            for step in payload.trace:
                if step.waypoint != points[-1]:
                    points.append(tuple(step.waypoint))
            if len(points) >= 2:
                traces.append(TracePolyline(name=name, points=tuple(points)))

    for sample in frontier_samples:
        if not model.is_feasible(problem, sample.point, tolerance):
            raise ValueError("frontier sample is infeasible")

    mode = "exact" if model.problem_is_exact(problem) else "float"
    meta = {"mode": mode}
    if metadata:
        meta.update(metadata)
    return Scene(
        problem=problem,
        polytope=polytope,
        markers=tuple(markers),
        traces=tuple(traces),
        frontier=tuple(frontier_samples),
        metadata=meta,
    )


def _scalar_string(value: Scalar) -> str:
    return model.format_scalar(value)


def _point_strings(point: Sequence) -> list[str]:
    return [_scalar_string(v) for v in point]


def _point_floats(point: Sequence) -> list[float]:
    return [float(v) for v in point]


def _parse_point(values: Sequence[str], mode: str) -> tuple:
    return tuple(model.parse_scalar(v, mode) for v in values)


def scene_to_jsonable(scene: Scene) -> dict:
    problem = scene.problem
    return {
        "scene_version": SCENE_VERSION,
        "problem": {
            "incoming": [
                {"label": l.label, "demand": _scalar_string(l.demand)}
                for l in problem.incoming
            ],
            "outgoing": [
                {"label": l.label, "supply": _scalar_string(l.supply)}
                for l in problem.outgoing
            ],
            "turning": [_point_strings(row) for row in problem.turning],
        },
        "vertices": [_point_strings(v) for v in scene.polytope.vertices],
        "vertices_dec": [_point_floats(v) for v in scene.polytope.vertices],
        "facets": [
            {"label": f.label, "vertex_ids": list(f.vertex_ids)}
            for f in scene.polytope.facets
        ],
        "markers": [
            {
                "name": m.name,
                "kind": m.kind,
                "point": _point_strings(m.point),
                "point_dec": _point_floats(m.point),
            }
            for m in scene.markers
        ],
        "traces": [
            {
                "name": t.name,
                "points": [_point_strings(p) for p in t.points],
                "points_dec": [_point_floats(p) for p in t.points],
            }
            for t in scene.traces
        ],
        "frontier": [
            {
                "point": _point_strings(s.point),
                "point_dec": _point_floats(s.point),
                "hfs": s.hfs,
                "pareto": s.pareto,
            }
            for s in scene.frontier
        ],
        "metadata": dict(sorted(scene.metadata.items())),
    }


def scene_to_json(scene: Scene) -> str:
    return json.dumps(scene_to_jsonable(scene), indent=2, sort_keys=True) + "\n"


def scene_from_json(text: str) -> Scene:
    data = json.loads(text)
    version = data.get("scene_version")
    if version != SCENE_VERSION:
        raise ValueError(f"unsupported scene version {version!r}")
    mode = data.get("metadata", {}).get("mode", "exact")

    problem = NodeProblem(
        incoming=tuple(
            model.IncomingLink(item["label"], model.parse_scalar(item["demand"], mode))
            for item in data["problem"]["incoming"]
        ),
        outgoing=tuple(
            model.OutgoingLink(item["label"], model.parse_scalar(item["supply"], mode))
            for item in data["problem"]["outgoing"]
        ),
        turning=tuple(
            _parse_point(row, mode) for row in data["problem"]["turning"]
        ),
    )
    polytope = Polytope(
        vertices=tuple(_parse_point(v, mode) for v in data["vertices"]),
        facets=tuple(
            Facet(label=f["label"], vertex_ids=tuple(f["vertex_ids"]))
            for f in data["facets"]
        ),
        dimension=problem.n_in,
    )
    return Scene(
        problem=problem,
        polytope=polytope,
        markers=tuple(
            Marker(
                name=m["name"], kind=m["kind"],
                point=_parse_point(m["point"], mode),
            )
            for m in data["markers"]
        ),
        traces=tuple(
            TracePolyline(
                name=t["name"],
                points=tuple(_parse_point(p, mode) for p in t["points"]),
            )
            for t in data["traces"]
        ),
        frontier=tuple(
            FrontierSample(
                point=_parse_point(s["point"], mode),
                hfs=s["hfs"], pareto=s["pareto"],
            )
            for s in data["frontier"]
        ),
        metadata=dict(data["metadata"]),
    )


def export_scene(problem: NodeProblem, results: Sequence[tuple],
                 frontier_samples: Sequence[FrontierSample], path) -> Scene:
    """Build the scene and write it as deterministic JSON; returns the scene."""
    scene = build_scene(problem, results, frontier_samples)
    with open(path, "w") as handle:
        handle.write(scene_to_json(scene))
    return scene
