"""Dominance, Pareto-optimality probe, grid oracle, frontier classification.

A feasible point is Pareto-optimal when no feasible point beats it
strictly in every coordinate.  The decision is a single auxiliary linear
program over the slack polytope — correct in any dimension — with a
brute-force grid oracle alongside for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from . import hfs, model, simplex
from .model import NodeProblem, Scalar, exact_div

GRID_CELL_BUDGET = 2_000_000


@dataclass(frozen=True)
class DominanceProbe:
    """Best uniform improvement margin t* = max over feasible q̃ of min_i (q̃_i − q_i).

    For feasible q the margin is never negative (q̃ = q gives 0); a strictly
    positive margin certifies a dominating witness.
    """

    margin: Scalar
    witness: tuple | None

    @property
    def pareto_optimal(self) -> bool:
        return self.margin <= 0


@dataclass(frozen=True)
class FrontierSample:
    point: tuple
    hfs: bool
    pareto: bool


def dominates(q_tilde: Sequence, q: Sequence) -> bool:
    """Strict improvement in every coordinate."""
    if len(q_tilde) != len(q):
        raise ValueError("flow vectors differ in length")
    return all(a > b for a, b in zip(q_tilde, q))


def is_pareto_optimal(problem: NodeProblem, q: Sequence,
                      tolerance: Scalar | None = None) -> DominanceProbe:
    """Solve max t s.t. q̃ feasible and q̃_i ≥ q_i + t for all i.

    Substituting r = q̃ − q turns every right-hand side into a slack of q,
    so the exact simplex starts from the slack basis directly.  Raises
    ``ValueError`` for infeasible q.
    """
    if tolerance is None:
        tolerance = model.default_tolerance(problem, q)
    if not model.is_feasible(problem, q, tolerance):
        raise ValueError("q is infeasible; Pareto optimality is undefined")
    n = problem.n_in
    if n == 0:
        return DominanceProbe(margin=0, witness=None)

    slack = model.slacks(problem, q)
    # variables r_1..r_n, t; maximize t
    objective = [0] * n + [1]
    lhs, rhs = [], []
    for i in range(n):
        row = [0] * (n + 1)
        row[i] = -1
        row[n] = 1
        lhs.append(row)  # t − r_i ≤ 0
        rhs.append(0)
    for i in range(n):
        row = [0] * (n + 1)
        row[i] = 1
        lhs.append(row)  # r_i ≤ demand slack
        rhs.append(max(slack.incoming[i], 0))
    for o in range(problem.n_out):
        coeffs = [problem.turning[i][o] for i in range(n)]
        if not any(c != 0 for c in coeffs):
            continue
        lhs.append(coeffs + [0])  # Σ f(i,o)·r_i ≤ supply slack
        rhs.append(max(slack.outgoing[o], 0))

    solution = simplex.maximize(objective, lhs, rhs)
    margin = solution.value
    witness = None
    if margin > 0:
        witness = tuple(q[i] + solution.x[i] for i in range(n))
    return DominanceProbe(margin=margin, witness=witness)


def grid_steps(problem: NodeProblem, divisions: int) -> tuple:
    """Per-axis spacing δ_i / divisions (axes with zero demand get step 0)."""
    if divisions <= 0:
        raise ValueError("divisions must be positive")
    return tuple(exact_div(d, divisions) if d > 0 else 0 for d in problem.demands)


def _axis_values(demand: Scalar, step: Scalar) -> list:
    if step == 0 or demand <= 0:
        return [0]
    count = math.floor(exact_div(demand, step))
    return [m * step for m in range(count + 1)]


def _grid_cells(problem: NodeProblem, steps: Sequence) -> int:
    total = 1
    for demand, step in zip(problem.demands, steps):
        total *= len(_axis_values(demand, step))
    return total


def _normalize_steps(problem: NodeProblem, grid_step) -> tuple:
    if isinstance(grid_step, (list, tuple)):
        steps = tuple(grid_step)
        if len(steps) != problem.n_in:
            raise ValueError("per-axis step count does not match incoming links")
    else:
        steps = (grid_step,) * problem.n_in
    if any(s < 0 for s in steps):
        raise ValueError("grid step must be nonnegative")
    return steps


def oracle_is_pareto_optimal(problem: NodeProblem, q: Sequence, grid_step,
                             cell_budget: int = GRID_CELL_BUDGET) -> bool:
    """Brute-force check: False iff some feasible grid point dominates q.

    The grid spans the demand box at the given spacing (scalar or
    per-axis).  Only cells strictly above q in every coordinate can
    dominate, so iteration starts there; the budget is checked against
    the full box grid.  Test-support oracle for the LP probe.
    """
    if grid_step == 0:
        raise ValueError("grid step must be positive")
    steps = _normalize_steps(problem, grid_step)
    if _grid_cells(problem, steps) > cell_budget:
        raise ValueError(f"grid exceeds cell budget of {cell_budget}")

    axes = []
    for demand, step, base in zip(problem.demands, steps, q):
        values = [v for v in _axis_values(demand, step) if v > base]
        if not values:
            return True  # no grid value above q on this axis: nothing dominates
        axes.append(values)
    for candidate in product(*axes):
        if model.is_feasible(problem, candidate):
            return False
    return True


def feasible_grid(problem: NodeProblem, divisions: int,
                  cell_budget: int = GRID_CELL_BUDGET) -> list[tuple]:
    """All feasible grid points at δ_i/divisions spacing, in iteration order."""
    steps = grid_steps(problem, divisions)
    if _grid_cells(problem, steps) > cell_budget:
        raise ValueError(f"grid exceeds cell budget of {cell_budget}")
    axes = [_axis_values(d, s) for d, s in zip(problem.demands, steps)]
    return [p for p in product(*axes) if model.is_feasible(problem, p)]


def classify_frontier(problem: NodeProblem, samples: Iterable[Sequence],
                      tolerance: Scalar | None = None) -> list[FrontierSample]:
    """Label each feasible sample with its holding-free and Pareto verdicts."""
    labelled = []
    for point in samples:
        probe = is_pareto_optimal(problem, point, tolerance)  # raises if infeasible
        labelled.append(FrontierSample(
            point=tuple(point),
            hfs=hfs.is_hfs(problem, point, tolerance),
            pareto=probe.pareto_optimal,
        ))
    return labelled
