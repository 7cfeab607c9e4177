"""Domain types and constraint algebra for a single junction node.

A node problem couples incoming links (each with a demand, the flow it
wants to send) to outgoing links (each with a supply, the flow it can
absorb) through a turning-ratio matrix.  Everything downstream — the
solvers, the holding-free check, the Pareto probe, the polytope export —
is phrased in terms of the half-space constraints built here.

Arithmetic is polymorphic: the canonical mode carries exact rationals
(`fractions.Fraction`, arbitrary precision, always in lowest terms), the
approximate mode carries binary floats.  All types are immutable values;
every operation is a pure function, safe for concurrent use.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Literal, Sequence, Union

Scalar = Union[int, Fraction, float]
FlowVector = tuple  # q_i per incoming link, same order as NodeProblem.incoming

FLOAT_TOLERANCE_BASE = 1e-9


@dataclass(frozen=True)
class IncomingLink:
    label: str
    demand: Scalar


@dataclass(frozen=True)
class OutgoingLink:
    label: str
    supply: Scalar


@dataclass(frozen=True)
class NodeProblem:
    """One junction instance: demands, supplies, and turning ratios.

    ``turning[i][o]`` is the fraction of incoming link i's flow headed to
    outgoing link o; row order follows ``incoming``, column order follows
    ``outgoing``.  Construction checks shape only; value-level invariants
    are reported by :func:`validate`.
    """

    incoming: tuple[IncomingLink, ...]
    outgoing: tuple[OutgoingLink, ...]
    turning: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        if len(self.turning) != len(self.incoming):
            raise ValueError(
                f"turning matrix has {len(self.turning)} rows for "
                f"{len(self.incoming)} incoming links"
            )
        for row in self.turning:
            if len(row) != len(self.outgoing):
                raise ValueError(
                    f"turning row has {len(row)} columns for "
                    f"{len(self.outgoing)} outgoing links"
                )

    @property
    def n_in(self) -> int:
        return len(self.incoming)

    @property
    def n_out(self) -> int:
        return len(self.outgoing)

    @property
    def demands(self) -> tuple:
        return tuple(link.demand for link in self.incoming)

    @property
    def supplies(self) -> tuple:
        return tuple(link.supply for link in self.outgoing)

    def incoming_index(self, label: str) -> int:
        for i, link in enumerate(self.incoming):
            if link.label == label:
                return i
        raise KeyError(f"no incoming link labelled {label!r}")

    def relevant_outputs(self, i: int) -> tuple[int, ...]:
        """Outgoing indices o with turning[i][o] > 0."""
        return tuple(o for o in range(self.n_out) if self.turning[i][o] > 0)


@dataclass(frozen=True)
class SlackVector:
    """Demand slacks s_i = δ_i − q_i and supply slacks s_o = σ_o − Σ f(i,o)·q_i."""

    incoming: tuple
    outgoing: tuple


@dataclass(frozen=True)
class HalfSpace:
    """One linear constraint a·q ≤ b over the incoming-flow vector.

    ``active`` is False only for supply rows whose coefficients are all
    zero; those are retained for stable indexing but never searched for
    bindings.
    """

    coefficients: tuple
    bound: Scalar
    kind: Literal["demand", "supply", "nonnegativity"]
    subject: str
    active: bool = True

    @property
    def label(self) -> str:
        return f"{self.kind}:{self.subject}"

    def evaluate(self, q: Sequence) -> Scalar:
        return sum(a * x for a, x in zip(self.coefficients, q))

    def satisfied(self, q: Sequence, tolerance: Scalar = 0) -> bool:
        return self.evaluate(q) <= self.bound + tolerance

    def is_binding(self, q: Sequence, tolerance: Scalar = 0) -> bool:
        return abs(self.evaluate(q) - self.bound) <= tolerance


@dataclass(frozen=True)
class Diagnostic:
    severity: Literal["error", "warning"]
    message: str


def exact_div(a: Scalar, b: Scalar) -> Scalar:
    """Division that keeps rationals rational (int/int must not become float)."""
    if isinstance(a, Rational) and isinstance(b, Rational):
        return Fraction(a) / Fraction(b)
    return a / b


def is_exact(values: Iterable) -> bool:
    """True when every value is rational (int or Fraction), i.e. exact mode."""
    return all(isinstance(v, Rational) for v in values)


def problem_is_exact(problem: NodeProblem) -> bool:
    return is_exact(problem.demands) and is_exact(problem.supplies) and all(
        is_exact(row) for row in problem.turning
    )


def default_tolerance(problem: NodeProblem, q: Sequence = ()) -> Scalar:
    """Zero in exact mode; scale-aware absolute epsilon in float mode."""
    if problem_is_exact(problem) and is_exact(q):
        return 0
    scale = max([1, *map(abs, problem.demands), *map(abs, problem.supplies)])
    return FLOAT_TOLERANCE_BASE * float(scale)


def validate(problem: NodeProblem) -> list[Diagnostic]:
    """Check value-level invariants; errors block solving, warnings do not.

    A turning row summing to something other than 1 is only a warning:
    none of the constraint algebra uses row sums.
    """
    out: list[Diagnostic] = []
    seen_in: set[str] = set()
    for link in problem.incoming:
        if link.label in seen_in:
            out.append(Diagnostic("error", f"duplicate incoming label {link.label!r}"))
        seen_in.add(link.label)
        if link.demand < 0:
            out.append(Diagnostic("error", f"negative demand on incoming {link.label!r}"))
    seen_out: set[str] = set()
    for link in problem.outgoing:
        if link.label in seen_out:
            out.append(Diagnostic("error", f"duplicate outgoing label {link.label!r}"))
        seen_out.add(link.label)
        if link.supply < 0:
            out.append(Diagnostic("error", f"negative supply on outgoing {link.label!r}"))
    for i, row in enumerate(problem.turning):
        label = problem.incoming[i].label
        for o, ratio in enumerate(row):
            if ratio < 0 or ratio > 1:
                out.append(Diagnostic(
                    "error",
                    f"turning ratio {label!r}->{problem.outgoing[o].label!r} "
                    f"outside [0, 1]",
                ))
        if problem.incoming[i].demand > 0 and not any(r > 0 for r in row):
            out.append(Diagnostic(
                "error",
                f"incoming {label!r} has positive demand but no positive turning ratio",
            ))
        total = sum(row)
        if total != 1:
            out.append(Diagnostic(
                "warning",
                f"turning row for incoming {label!r} sums to {total}, not 1",
            ))
    return out


def outgoing_flow(problem: NodeProblem, q: Sequence) -> tuple:
    """Per-output flows q_o = Σ_i f(i,o)·q_i."""
    _check_length(problem, q)
    return tuple(
        sum(problem.turning[i][o] * q[i] for i in range(problem.n_in))
        for o in range(problem.n_out)
    )


def demand_halfspaces(problem: NodeProblem) -> list[HalfSpace]:
    """One half-space q_i ≤ δ_i per incoming link."""
    spaces = []
    for i, link in enumerate(problem.incoming):
        coeffs = tuple(1 if j == i else 0 for j in range(problem.n_in))
        spaces.append(HalfSpace(coeffs, link.demand, "demand", link.label))
    return spaces


def supply_halfspaces(problem: NodeProblem) -> list[HalfSpace]:
    """One half-space Σ_i f(i,o)·q_i ≤ σ_o per outgoing link.

    Rows with all-zero coefficients are flagged inactive and must be
    skipped by binding searches.
    """
    spaces = []
    for o, link in enumerate(problem.outgoing):
        coeffs = tuple(problem.turning[i][o] for i in range(problem.n_in))
        spaces.append(HalfSpace(
            coeffs, link.supply, "supply", link.label,
            active=any(c != 0 for c in coeffs),
        ))
    return spaces


def nonnegativity_halfspaces(problem: NodeProblem) -> list[HalfSpace]:
    """−q_i ≤ 0 per incoming link, in a·q ≤ b form."""
    spaces = []
    for i, link in enumerate(problem.incoming):
        coeffs = tuple(-1 if j == i else 0 for j in range(problem.n_in))
        spaces.append(HalfSpace(coeffs, 0, "nonnegativity", link.label))
    return spaces


def constraint_halfspaces(problem: NodeProblem) -> list[HalfSpace]:
    """All constraints: nonnegativity, demand, and supply (inactive included)."""
    return (
        nonnegativity_halfspaces(problem)
        + demand_halfspaces(problem)
        + supply_halfspaces(problem)
    )


def is_feasible(problem: NodeProblem, q: Sequence, tolerance: Scalar | None = None) -> bool:
    """True iff q ≥ 0, q_i ≤ δ_i, and every supply constraint holds, all within tolerance."""
    _check_length(problem, q)
    if tolerance is None:
        tolerance = default_tolerance(problem, q)
    if any(x < -tolerance for x in q):
        return False
    if any(q[i] > problem.incoming[i].demand + tolerance for i in range(problem.n_in)):
        return False
    out = outgoing_flow(problem, q)
    return all(out[o] <= problem.outgoing[o].supply + tolerance for o in range(problem.n_out))


def slacks(problem: NodeProblem, q: Sequence) -> SlackVector:
    """Demand and supply slacks at q; entries may be negative for infeasible q."""
    _check_length(problem, q)
    out = outgoing_flow(problem, q)
    return SlackVector(
        incoming=tuple(problem.incoming[i].demand - q[i] for i in range(problem.n_in)),
        outgoing=tuple(problem.outgoing[o].supply - out[o] for o in range(problem.n_out)),
    )


def _check_length(problem: NodeProblem, q: Sequence):
    if len(q) != problem.n_in:
        raise ValueError(f"flow vector has {len(q)} entries for {problem.n_in} incoming links")


# ---------------------------------------------------------------------------
# problem file format (JSON)

def parse_scalar(value, mode: str = "exact") -> Scalar:
    """Accept ints, floats, and decimal/fraction strings ("16.7", "50/3")."""
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    if isinstance(value, bool):
        raise ValueError(f"not a number: {value!r}")
    if isinstance(value, int):
        return value if mode == "exact" else float(value)
    if isinstance(value, Fraction):
        return value if mode == "exact" else float(value)
    if isinstance(value, float):
        return Fraction(value) if mode == "exact" else value
    if isinstance(value, str):
        if mode == "float" and "/" not in value:
            return float(value)
        exact = Fraction(value)
        return exact if mode == "exact" else float(exact)
    raise ValueError(f"not a number: {value!r}")


def format_scalar(value: Scalar) -> str:
    """Canonical text form: "600", "50/3", or a float's shortest repr."""
    if isinstance(value, float):
        return repr(value)
    return str(Fraction(value))


def scalar_to_jsonable(value: Scalar):
    """Encode so that exact-mode parsing recovers the value exactly.

    Integers stay ints; rationals whose shortest float representation
    round-trips (0.5, 16.7, ...) become JSON numbers; anything else
    (1/3, ...) becomes a "num/den" string.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a number: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return value
    if value.denominator == 1:
        return int(value)
    approx = float(value)
    if Fraction(repr(approx)) == value:
        return approx
    return str(value)


def problem_from_json(text: str, mode: str = "exact") -> NodeProblem:
    """Parse the problem file format.

    In exact mode JSON float tokens are parsed from their literal decimal
    text, so 0.5 means exactly 1/2 and 16.7 exactly 167/10.
    """
    if mode == "exact":
        data = json.loads(text, parse_float=Fraction)
    else:
        data = json.loads(text)
    try:
        incoming = tuple(
            IncomingLink(str(item["label"]), parse_scalar(item["demand"], mode))
            for item in data["incoming"]
        )
        outgoing = tuple(
            OutgoingLink(str(item["label"]), parse_scalar(item["supply"], mode))
            for item in data["outgoing"]
        )
        turning = tuple(
            tuple(parse_scalar(ratio, mode) for ratio in row)
            for row in data["turning"]
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed problem file: {exc}") from exc
    return NodeProblem(incoming=incoming, outgoing=outgoing, turning=turning)


def problem_to_jsonable(problem: NodeProblem) -> dict:
    return {
        "incoming": [
            {"label": link.label, "demand": scalar_to_jsonable(link.demand)}
            for link in problem.incoming
        ],
        "outgoing": [
            {"label": link.label, "supply": scalar_to_jsonable(link.supply)}
            for link in problem.outgoing
        ],
        "turning": [[scalar_to_jsonable(r) for r in row] for row in problem.turning],
    }


def problem_to_json(problem: NodeProblem) -> str:
    return json.dumps(problem_to_jsonable(problem), indent=2, sort_keys=True) + "\n"


def demo_problem() -> NodeProblem:
    """The built-in three-in/three-out demo junction.

    Incoming E/N/S with demands 100/600/600; outgoing N/W/S with supplies
    1400/400/1400; E turns entirely west, N splits west/south, S splits
    north/west.  Small enough to check every number by hand, rich enough
    that the west supply is the only binding wall.
    """
    half = Fraction(1, 2)
    return NodeProblem(
        incoming=(
            IncomingLink("E", 100),
            IncomingLink("N", 600),
            IncomingLink("S", 600),
        ),
        outgoing=(
            OutgoingLink("N", 1400),
            OutgoingLink("W", 400),
            OutgoingLink("S", 1400),
        ),
        turning=(
            (0, 1, 0),
            (0, half, half),
            (half, half, 0),
        ),
    )
