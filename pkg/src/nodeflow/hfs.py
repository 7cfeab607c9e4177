"""Holding-free verification.

A flow vector holds nobody back when every incoming link is pinned by its
own demand or by at least one supply it feeds: per link, the product of
the demand slack with all relevant supply slacks must vanish.  Two
equivalent formulations are implemented separately on purpose —
:func:`is_hfs` tests the per-link disjunction directly, while
:func:`hfs_residual` sums the slack products into a single residual v —
so each can cross-check the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import model
from .model import NodeProblem, Scalar


@dataclass(frozen=True)
class LinkTerm:
    link: str
    demand_slack: Scalar
    supply_slack_product: Scalar
    term: Scalar


@dataclass(frozen=True)
class HfsReport:
    """Residual v = Σ_i s_i·Π s_o with its per-link breakdown.

    v mixes units across terms (each product has a link-dependent number
    of factors); it is meaningful only as a zero/nonzero certificate.
    ``holding_free`` is forced False for infeasible q — the condition is
    only defined on the feasible set — with ``feasible`` flagging why.
    """

    residual: Scalar
    per_link_terms: tuple[LinkTerm, ...]
    holding_free: bool
    feasible: bool


def _resolve_tolerance(problem: NodeProblem, q: Sequence, tolerance) -> Scalar:
    if tolerance is not None:
        return tolerance
    if model.problem_is_exact(problem) and model.is_exact(q):
        return 0
    return model.FLOAT_TOLERANCE_BASE


def _slack_scale(bound: Scalar) -> Scalar:
    return max(1, abs(bound))


def hfs_residual(problem: NodeProblem, q: Sequence, tolerance: Scalar | None = None) -> HfsReport:
    """Evaluate the slack-product residual at q, feasible or not.

    ``tolerance`` is a relative base knob: each term counts as zero when
    its magnitude is at most tolerance times the product of its factors'
    natural scales (the demand and supply bounds), since a product of
    several near-1000 quantities needs a scaled threshold.  Exact inputs
    default to zero tolerance.
    """
    tolerance = _resolve_tolerance(problem, q, tolerance)
    slack = model.slacks(problem, q)
    feasible = model.is_feasible(problem, q, tolerance=None)

    terms = []
    all_zero = True
    for i, link in enumerate(problem.incoming):
        product = 1
        scale = _slack_scale(link.demand)
        for o in problem.relevant_outputs(i):
            product = product * slack.outgoing[o]
            scale = scale * _slack_scale(problem.outgoing[o].supply)
        term = slack.incoming[i] * product
        if abs(term) > tolerance * scale:
            all_zero = False
        terms.append(LinkTerm(
            link=link.label,
            demand_slack=slack.incoming[i],
            supply_slack_product=product,
            term=term,
        ))

    return HfsReport(
        residual=sum(t.term for t in terms),
        per_link_terms=tuple(terms),
        holding_free=feasible and all_zero,
        feasible=feasible,
    )


def is_hfs(problem: NodeProblem, q: Sequence, tolerance: Scalar | None = None) -> bool:
    """Per-link disjunction: demand slack zero, or some relevant supply slack zero."""
    tolerance = _resolve_tolerance(problem, q, tolerance)
    if not model.is_feasible(problem, q, tolerance=None):
        return False
    slack = model.slacks(problem, q)
    for i, link in enumerate(problem.incoming):
        if abs(slack.incoming[i]) <= tolerance * _slack_scale(link.demand):
            continue
        if any(
            abs(slack.outgoing[o]) <= tolerance * _slack_scale(problem.outgoing[o].supply)
            for o in problem.relevant_outputs(i)
        ):
            continue
        return False
    return True
