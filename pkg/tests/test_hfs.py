import random
from fractions import Fraction

from nodeflow import hfs, model, solvers

from conftest import random_feasible_point, random_problem

INM_POINT = (Fraction(50, 3), 600, Fraction(500, 3))


def test_residual_at_origin(demo):
    report = hfs.hfs_residual(demo, (0, 0, 0))
    assert [t.term for t in report.per_link_terms] == [40_000, 336_000_000, 336_000_000]
    assert report.residual == 672_040_000
    assert report.feasible
    assert not report.holding_free


def test_residual_zero_at_flowmax_vertex(demo):
    report = hfs.hfs_residual(demo, (0, 600, 200))
    assert report.residual == 0
    assert report.holding_free


def test_residual_terms_at_demand_corner(demo):
    # at [0,600,0] only the N term vanishes: E sees 100*100, S sees 600*(1400*100)
    report = hfs.hfs_residual(demo, (0, 600, 0))
    terms = [t.term for t in report.per_link_terms]
    assert terms == [10_000, 0, 84_000_000]
    assert report.residual == 84_010_000
    assert not report.holding_free


def test_residual_flags_infeasible(demo):
    report = hfs.hfs_residual(demo, (0, 600, 600))
    assert not report.feasible
    assert not report.holding_free


def test_is_hfs_demo_points(demo):
    assert hfs.is_hfs(demo, INM_POINT)
    assert not hfs.is_hfs(demo, (0, 0, 0))
    assert hfs.is_hfs(demo, (100, 0, 600))
    assert not hfs.is_hfs(demo, (0, 600, 0))
    assert not hfs.is_hfs(demo, (0, 600, 600))  # infeasible


def test_is_hfs_matches_residual_on_feasible_points(demo):
    rng = random.Random(101)
    points = [
        (0, 0, 0), (0, 600, 0), (0, 600, 200), INM_POINT, (100, 0, 600),
        (50, 100, 100), (Fraction(1, 3), 0, 0),
    ]
    for _ in range(60):
        points.append(random_feasible_point(rng, demo))
    for q in points:
        report = hfs.hfs_residual(demo, q)
        assert hfs.is_hfs(demo, q) == (report.residual == 0)
        assert report.holding_free == (report.residual == 0)


def test_equivalence_on_random_problems():
    rng = random.Random(103)
    for _ in range(80):
        problem = random_problem(rng)
        q = random_feasible_point(rng, problem)
        report = hfs.hfs_residual(problem, q)
        assert hfs.is_hfs(problem, q) == (report.residual == 0)


def test_float_mode_inm_point_passes_scaled_tolerance(demo):
    floaty = model.problem_from_json(model.problem_to_json(demo), mode="float")
    result = solvers.solve_inm(floaty, [0.1, 10.0, 1.0])
    assert hfs.is_hfs(floaty, result.flows)
    assert hfs.hfs_residual(floaty, result.flows).holding_free


def test_zero_demand_link_never_blocks():
    problem = model.NodeProblem(
        incoming=(model.IncomingLink("A", 0), model.IncomingLink("B", 10)),
        outgoing=(model.OutgoingLink("X", 4),),
        turning=((0,), (1,)),
    )
    assert hfs.is_hfs(problem, (0, 4))
    assert not hfs.is_hfs(problem, (0, 3))
