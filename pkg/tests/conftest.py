import random
from fractions import Fraction

import pytest

from nodeflow.model import IncomingLink, NodeProblem, OutgoingLink, demo_problem, is_feasible


@pytest.fixture
def demo():
    return demo_problem()


RATIOS = [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(1)]


def random_problem(rng: random.Random, max_in: int = 5, max_out: int = 5) -> NodeProblem:
    """Random valid instance with rational data; exercises zero demands/supplies."""
    n_in = rng.randint(1, max_in)
    n_out = rng.randint(1, max_out)
    incoming = []
    for i in range(n_in):
        if rng.random() < 0.15:
            demand = Fraction(0)
        else:
            demand = Fraction(rng.randint(1, 48), rng.randint(1, 4)) * 25
        incoming.append(IncomingLink(f"I{i}", demand))
    outgoing = []
    for o in range(n_out):
        if rng.random() < 0.1:
            supply = Fraction(0)
        else:
            supply = Fraction(rng.randint(1, 64), rng.randint(1, 4)) * 25
        outgoing.append(OutgoingLink(f"O{o}", supply))
    turning = []
    for i in range(n_in):
        row = [Fraction(0)] * n_out
        if incoming[i].demand > 0 or rng.random() < 0.7:
            spread = rng.randint(1, n_out)
            for o in rng.sample(range(n_out), spread):
                row[o] = rng.choice(RATIOS)
        turning.append(tuple(row))
    return NodeProblem(tuple(incoming), tuple(outgoing), tuple(turning))


def random_weights(rng: random.Random, problem: NodeProblem) -> list:
    return [Fraction(rng.randint(1, 12), rng.randint(1, 4)) for _ in range(problem.n_in)]


def random_order(rng: random.Random, problem: NodeProblem) -> list:
    order = list(range(problem.n_in))
    rng.shuffle(order)
    return order


def random_feasible_point(rng: random.Random, problem: NodeProblem) -> tuple:
    """Random feasible point: scale a random box point down until it fits.

    Links feeding a zero-supply output are pinned to zero up front —
    halving alone would approach but never reach the required zero.
    """
    point = [
        link.demand * Fraction(rng.randint(0, 16), 16)
        for link in problem.incoming
    ]
    for i in range(problem.n_in):
        if any(problem.outgoing[o].supply == 0 for o in problem.relevant_outputs(i)):
            point[i] = Fraction(0)
    for _ in range(64):
        if is_feasible(problem, point, tolerance=0):
            return tuple(point)
        point = [Fraction(1, 2) * x for x in point]
    return tuple(Fraction(0) for _ in point)
