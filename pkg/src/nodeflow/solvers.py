"""Three flow-allocation algorithms over one node problem.

* :func:`solve_inm` — incremental node transfer: advance every still-active
  incoming flow simultaneously along its merging weight until a demand or
  supply wall binds, drop the affected links, repeat.
* :func:`solve_greedy` — serve incoming links one at a time in a given
  permutation, each taking as much as its demand and the residual supplies
  allow.
* :func:`solve_flowmax` — maximize total throughput by exact simplex.

All three return a :class:`SolverResult` whose flows are feasible and
holding-free; the trace records each waypoint with the constraints that
bound there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import geometry, model, simplex
from .model import NodeProblem, Scalar, exact_div

# Merging weights: one positive scalar per incoming link (may be anything on
# zero-demand links, which never move).  Permutations: every incoming index
# exactly once.
MergingWeights = Sequence[Scalar]
Permutation = Sequence[int]


@dataclass(frozen=True)
class TraceStep:
    waypoint: tuple
    event: str
    removed_links: frozenset[str]


@dataclass(frozen=True)
class SolverResult:
    flows: tuple
    total: Scalar
    trace: tuple[TraceStep, ...]
    iterations: int


def total_flow(q: Sequence) -> Scalar:
    return sum(q)


def _check_weights(problem: NodeProblem, weights: MergingWeights):
    if len(weights) != problem.n_in:
        raise ValueError(
            f"{len(weights)} merging weights for {problem.n_in} incoming links"
        )
    for link, weight in zip(problem.incoming, weights):
        if link.demand > 0 and weight <= 0:
            raise ValueError(
                f"merging weight for demanded link {link.label!r} must be "
                f"positive, got {weight}"
            )


def solve_inm(problem: NodeProblem, weights: MergingWeights) -> SolverResult:
    """Incremental node transfer with simultaneous merging-weight movement.

    Each iteration moves q along direction d (d_i = α_i on active links,
    0 elsewhere) to the smallest parameter at which a demand of an active
    link, or a supply with positive directional derivative, reaches
    equality.  A bound demand retires its link; a bound supply retires
    every active link feeding it.  Simultaneous bindings are applied in
    one step, so at least one link retires per iteration and the loop
    ends within |incoming| steps.
    """
    _check_weights(problem, weights)
    n = problem.n_in
    q = [0 * w for w in weights]  # zero of the weight's numeric type
    active = {i for i in range(n) if problem.incoming[i].demand > 0}
    supplies = model.supply_halfspaces(problem)
    trace: list[TraceStep] = []
    iterations = 0

    while active:
        iterations += 1
        direction = [weights[i] if i in active else 0 for i in range(n)]
        candidates: list[tuple[Scalar, str, str, int]] = []
        for i in sorted(active):
            step = exact_div(problem.incoming[i].demand - q[i], weights[i])
            candidates.append((step, "demand", problem.incoming[i].label, i))
        for o, space in enumerate(supplies):
            if not space.active:
                continue
            slope = space.evaluate(direction)
            if slope > 0:
                step = exact_div(space.bound - space.evaluate(q), slope)
                candidates.append((step, "supply", space.subject, o))

        advance = min(step for step, *_ in candidates)
        for i in active:
            q[i] = q[i] + advance * weights[i]

        removed: set[int] = set()
        events: list[str] = []
        for step, kind, label, idx in candidates:
            if step != advance:
                continue
            events.append(f"{kind} {label} binding")
            if kind == "demand":
                removed.add(idx)
            else:
                removed |= {i for i in active if problem.turning[i][idx] > 0}
        active -= removed
        trace.append(TraceStep(
            waypoint=tuple(q),
            event=", ".join(events),
            removed_links=frozenset(problem.incoming[i].label for i in removed),
        ))

    return SolverResult(
        flows=tuple(q), total=total_flow(q), trace=tuple(trace), iterations=iterations
    )


def _check_order(problem: NodeProblem, order: Permutation):
    if sorted(order) != list(range(problem.n_in)):
        raise ValueError(
            f"order {list(order)} is not a permutation of 0..{problem.n_in - 1}"
        )


def solve_greedy(problem: NodeProblem, order: Permutation) -> SolverResult:
    """Serve links in order; each takes min(demand, tightest residual/ratio).

    After serving link i every touched residual shrinks by f(i,o)·q_i, so
    each processed link ends demand-bound or leaves some residual exactly
    zero.
    """
    _check_order(problem, order)
    residual = [link.supply for link in problem.outgoing]
    q = [0] * problem.n_in
    trace: list[TraceStep] = []

    for i in order:
        link = problem.incoming[i]
        relevant = problem.relevant_outputs(i)
        flow = link.demand
        for o in relevant:
            flow = min(flow, exact_div(residual[o], problem.turning[i][o]))
        q[i] = flow
        for o in range(problem.n_out):
            residual[o] = residual[o] - problem.turning[i][o] * flow

        events = []
        if flow == link.demand:
            events.append(f"demand {link.label} binding")
        events.extend(
            f"supply {problem.outgoing[o].label} exhausted"
            for o in relevant if residual[o] == 0
        )
        trace.append(TraceStep(
            waypoint=tuple(q),
            event=", ".join(events),
            removed_links=frozenset({link.label}),
        ))

    return SolverResult(
        flows=tuple(q), total=total_flow(q), trace=tuple(trace),
        iterations=problem.n_in,
    )


def _feasibility_rows(problem: NodeProblem) -> tuple[list, list]:
    """Demand and active-supply rows of the feasible polytope, as (lhs, rhs)."""
    lhs, rhs = [], []
    for space in model.demand_halfspaces(problem) + model.supply_halfspaces(problem):
        if not space.active:
            continue
        lhs.append(list(space.coefficients))
        rhs.append(space.bound)
    return lhs, rhs


def solve_flowmax(problem: NodeProblem) -> SolverResult:
    """Maximize Σ q_i by exact simplex with Bland's rule.

    The polytope is nonempty and bounded (0 ≤ q ≤ δ), so the program
    always has an optimal vertex; Bland's rule fixes which one.  The trace
    keeps only the optimum — intermediate pivot vertices are not
    coordinatewise monotone, which waypoints must be.
    """
    lhs, rhs = _feasibility_rows(problem)
    solution = simplex.maximize([1] * problem.n_in, lhs, rhs)
    step = TraceStep(
        waypoint=solution.x,
        event=f"simplex optimum after {solution.pivots} pivots",
        removed_links=frozenset(),
    )
    return SolverResult(
        flows=solution.x, total=solution.value, trace=(step,),
        iterations=solution.pivots,
    )


def enumerate_flowmax_optima(problem: NodeProblem) -> list[tuple]:
    """All polytope vertices attaining the maximum total flow, in lexicographic order."""
    polytope = geometry.enumerate_vertices(problem)
    best = max(total_flow(v) for v in polytope.vertices)
    return [v for v in polytope.vertices if total_flow(v) == best]
