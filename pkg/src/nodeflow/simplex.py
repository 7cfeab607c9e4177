"""Dense primal simplex over exact rationals, Bland pivoting.

Solves max c·x subject to A·x ≤ b, x ≥ 0 where every b_k ≥ 0, so the
slack basis is feasible and no phase-one is needed.  That covers both
programs this package poses: total-flow maximization (bounds are demands
and supplies) and the Pareto dominance probe (bounds are slacks of a
feasible point).  Bland's rule — smallest-index entering column, and on
ratio ties the leaving row whose basic variable has the smallest index —
makes the pivot sequence deterministic and cycling impossible.

With Fraction inputs every tableau entry stays exact; float inputs work
too but are only used for throwaway experiments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .model import exact_div


@dataclass(frozen=True)
class SimplexSolution:
    x: tuple
    value: object
    pivots: int


class UnboundedProgram(Exception):
    """Objective can grow without bound; callers here always pose bounded programs."""


def maximize(objective: Sequence, lhs: Sequence[Sequence], rhs: Sequence) -> SimplexSolution:
    n = len(objective)
    m = len(rhs)
    for row in lhs:
        if len(row) != n:
            raise ValueError("constraint row length does not match objective")
    if any(b < 0 for b in rhs):
        raise ValueError("rhs must be nonnegative (slack basis start)")

    zero = _zero_like(objective, lhs, rhs)
    one = zero + 1

    # tableau rows: [A | I | b]; cost row holds reduced costs, starting at -c
    tableau = []
    for k in range(m):
        row = list(lhs[k]) + [zero] * m + [rhs[k]]
        row[n + k] = one
        tableau.append(row)
    cost = [-c for c in objective] + [zero] * (m + 1)
    basis = list(range(n, n + m))

    pivots = 0
    while True:
        entering = next((j for j in range(n + m) if cost[j] < 0), None)
        if entering is None:
            break
        leaving_row = None
        best_ratio = None
        for r in range(m):
            coef = tableau[r][entering]
            if coef > 0:
                ratio = exact_div(tableau[r][-1], coef)
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[r] < basis[leaving_row])):
                    best_ratio = ratio
                    leaving_row = r
        if leaving_row is None:
            raise UnboundedProgram(f"column {entering} has no positive pivot")
        _pivot(tableau, cost, basis, leaving_row, entering)
        pivots += 1

    x = [zero] * n
    for r, var in enumerate(basis):
        if var < n:
            x[var] = tableau[r][-1]
    value = sum(c * xi for c, xi in zip(objective, x))
    return SimplexSolution(x=tuple(x), value=value, pivots=pivots)


def _pivot(tableau, cost, basis, row, col):
    pivot = tableau[row][col]
    tableau[row] = [exact_div(v, pivot) for v in tableau[row]]
    for r in range(len(tableau)):
        if r != row and tableau[r][col] != 0:
            factor = tableau[r][col]
            tableau[r] = [a - factor * b for a, b in zip(tableau[r], tableau[row])]
    if cost[col] != 0:
        factor = cost[col]
        for j in range(len(cost)):
            cost[j] -= factor * tableau[row][j]
    basis[row] = col


def _zero_like(objective, lhs, rhs):
    # float anywhere poisons the whole tableau to float; otherwise exact int 0
    for v in objective:
        if isinstance(v, float):
            return 0.0
    for row in lhs:
        for v in row:
            if isinstance(v, float):
                return 0.0
    for v in rhs:
        if isinstance(v, float):
            return 0.0
    return 0
