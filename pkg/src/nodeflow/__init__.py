"""Exact flow allocation through a junction: solvers, checks, geometry.

The package models a single junction node — incoming links with demands,
outgoing links with supplies, a turning-ratio matrix — and provides three
allocation algorithms (incremental node transfer, greedy, total-flow
maximization), holding-free and Pareto-optimality verification, and
feasible-polytope geometry export for rendering.
"""

from .model import (
    Diagnostic,
    FlowVector,
    HalfSpace,
    IncomingLink,
    NodeProblem,
    OutgoingLink,
    Scalar,
    SlackVector,
    demand_halfspaces,
    demo_problem,
    is_feasible,
    outgoing_flow,
    problem_from_json,
    problem_to_json,
    slacks,
    supply_halfspaces,
    validate,
)
from .solvers import (
    SolverResult,
    TraceStep,
    enumerate_flowmax_optima,
    solve_flowmax,
    solve_greedy,
    solve_inm,
    total_flow,
)
from .hfs import HfsReport, LinkTerm, hfs_residual, is_hfs
from .pareto import (
    DominanceProbe,
    FrontierSample,
    classify_frontier,
    dominates,
    is_pareto_optimal,
    oracle_is_pareto_optimal,
)
from .geometry import (
    Facet,
    InterceptForm,
    Marker,
    ParametricLine,
    Polytope,
    Scene,
    TracePolyline,
    build_scene,
    enumerate_vertices,
    export_scene,
    intercept_form,
    line_halfspace_hit,
    merging_line,
    scene_from_json,
    scene_to_json,
)

__version__ = "0.1.0"
