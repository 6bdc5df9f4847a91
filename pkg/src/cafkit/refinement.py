"""Best-refinement computation and refinement-relation checking.

A refinement tightens interval upper bounds without removing any achievable
degree combination; lower bounds are never touched.  For each argument whose
whole upper face lies outside the degree space, the largest still-achievable
coordinate is located by bisection and the upper bound is pulled down to
just above it, making the result eps-rational.
"""

from __future__ import annotations

from dataclasses import dataclass

from .framework import ABS_TOL, CAF, Interval
from .rationality import NotRationalError, is_rational
from .semantics import DEFAULT_CONFIG, SemanticsId, SolverConfig, is_achievable

# Hard cap per axis; generous for any eps above ~1e-60.
_MAX_BISECTION_STEPS = 256


@dataclass(frozen=True)
class RefinementReport:
    """Outcome of a best-refinement run.

    ``tightened`` maps each modified argument to (old upper bound, new
    upper bound); ``iterations`` counts bisection steps over all axes.
    """

    refined: CAF
    tightened: dict[str, tuple[float, float]]
    epsilon: float
    iterations: int


def refine(
    caf: CAF, sem: SemanticsId, eps: float, cfg: SolverConfig = DEFAULT_CONFIG
) -> RefinementReport:
    """Best refinement of a rational framework, to resolution ``eps``.

    Arguments are processed in declaration order.  For each argument whose
    upper face fails the achievability test, the interval's upper bound is
    bisected down to at most ``eps`` above the largest achievable value of
    that coordinate (others held at their minima), so the output is
    eps-rational whenever every output interval is at least eps wide.
    Lower bounds are never modified.

    Raises NotRationalError on an irrational input.
    """
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    if not is_rational(caf, sem, cfg):
        raise NotRationalError("refine requires a rational framework")
    graph = caf.graph
    intervals = dict(caf.intervals)
    mins = caf.min_corner()
    tightened: dict[str, tuple[float, float]] = {}
    iterations = 0
    for a in graph.arguments:
        iv = intervals[a]
        face_point = dict(mins)
        face_point[a] = iv.hi
        if is_achievable(graph, face_point, sem, cfg):
            continue
        lo, r = iv.lo, iv.hi
        l = lo
        point = dict(mins)
        while True:
            iterations += 1
            if iterations > _MAX_BISECTION_STEPS * len(graph.arguments):
                raise RuntimeError("bisection failed to terminate")
            m = (l + r) / 2.0
            point[a] = m
            if is_achievable(graph, point, sem, cfg):
                l = m
            else:
                r = m
                # exit only once the bracket is narrower than eps, so the
                # new bound sits within eps of the achievable frontier
                if r - l < eps:
                    break
        tightened[a] = (iv.hi, m)
        intervals[a] = Interval(lo, m)
    refined = CAF(graph, intervals, caf.costs)
    return RefinementReport(refined, tightened, eps, iterations)


def is_refinement(
    candidate: CAF,
    original: CAF,
    sem: SemanticsId,
    delta: float,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> bool:
    """Whether ``candidate`` refines ``original`` at resolution ``delta``.

    Checks (1) interval containment with identical lower bounds, and
    (2) that no achievable point was removed: for every tightened axis the
    min-corner with that coordinate pushed ``delta`` above the new upper
    bound must be unachievable.  ``original`` is assumed rational.

    Raises ValueError when the two frameworks disagree on the graph.
    """
    if not delta > 0.0:
        raise ValueError("delta must be positive")
    if candidate.graph != original.graph:
        raise ValueError("candidate and original have different graphs")
    for a in original.graph.arguments:
        c, o = candidate.intervals[a], original.intervals[a]
        if abs(c.lo - o.lo) > ABS_TOL:
            return False
        if c.hi > o.hi + ABS_TOL:
            return False
    mins = original.min_corner()
    for a in original.graph.arguments:
        c, o = candidate.intervals[a], original.intervals[a]
        if c.hi >= o.hi - ABS_TOL:
            continue
        probe = c.hi + delta
        if probe > 1.0:
            continue  # degrees above 1 are unachievable by definition
        point = dict(mins)
        point[a] = probe
        if is_achievable(original.graph, point, sem, cfg):
            return False
    return True


def is_better_refinement(
    r1: CAF,
    r2: CAF,
    original: CAF,
    sem: SemanticsId,
    delta: float,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> bool:
    """Whether refinement ``r1`` is at least as tight as refinement ``r2``.

    Both inputs must refine ``original``; r1 is the better refinement iff
    r1 is itself a refinement of r2.
    """
    if not is_refinement(r1, original, sem, delta, cfg):
        raise ValueError("r1 is not a refinement of the original")
    if not is_refinement(r2, original, sem, delta, cfg):
        raise ValueError("r2 is not a refinement of the original")
    return is_refinement(r1, r2, sem, delta, cfg)
