"""Repair of irrational frameworks by lowering interval minima at least cost.

Strategy 1 slides the all-minima corner toward the origin along the line
with per-argument direction 1 / cost(a): at line parameter t each selected
argument's lower bound becomes max(0, lo(a) - t / cost(a)), so equal t means
equal spent cost on every unclamped argument.  The smallest t restoring
rationality is found by bisection; monotonicity of rationality in t follows
from axial-radiality (the min-corner only ever moves coordinatewise toward
the origin).

Strategy 2 runs Strategy 1 over every non-empty argument subset and keeps
the cheapest feasible repair.  Subset enumeration is exponential and is
refused above 20 arguments unless explicitly capped.

Charged cost is the actual displacement: sum of cost(a) * (old lo - new lo),
so arguments clamped at zero contribute cost(a) * lo(a) rather than t.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import Enum

from .framework import CAF, Interval, InvalidFrameworkError
from .rationality import is_rational
from .semantics import DEFAULT_CONFIG, SemanticsId, SolverConfig

#: Hard ceiling for exact subset enumeration in Strategy 2.
S2_EXACT_LIMIT = 20

CostMap = dict[str, float]


class AlreadyRationalError(ValueError):
    """Correction was asked for a framework that is already rational."""


class InfeasibleSubsetError(ValueError):
    """No line parameter makes the framework rational for the given subset."""


class CostPreset(Enum):
    UNIT = "unit"
    ORIGIN_LINE = "origin_line"
    CUSTOM = "custom"


@dataclass(frozen=True)
class CorrectionResult:
    """A repaired framework plus its price tag.

    ``parameter_t`` is the line parameter at which rationality was reached;
    ``modified`` holds the arguments whose lower bound actually moved.
    ``subset`` is the winning subset for Strategy 2, None for Strategy 1.
    """

    corrected: CAF
    total_cost: float
    modified: frozenset[str]
    parameter_t: float
    strategy: str
    subset: frozenset[str] | None = None


def cost_presets(kind: CostPreset, caf: CAF) -> CostMap:
    """Cost maps for the two cost-free strategy variants plus pass-through.

    UNIT charges every argument equally.  ORIGIN_LINE sets cost(a) to
    1 / lo(a), making per-step displacement proportional to lo(a), i.e. the
    minima move along the segment from the all-minima corner to the origin;
    arguments whose minimum is already 0 are excluded from motion.  CUSTOM
    echoes the costs stored on the framework.
    """
    if kind is CostPreset.UNIT:
        return {a: 1.0 for a in caf.graph.arguments}
    if kind is CostPreset.CUSTOM:
        return dict(caf.costs)
    movable = {
        a: 1.0 / caf.intervals[a].lo
        for a in caf.graph.arguments
        if caf.intervals[a].lo > 0.0
    }
    if not movable:
        raise InvalidFrameworkError(
            "origin_line preset needs at least one argument with a positive minimum"
        )
    return movable


def _check_subset(caf: CAF, costs: Mapping[str, float], subset: Iterable[str]) -> tuple[str, ...]:
    members = tuple(a for a in caf.graph.arguments if a in set(subset))
    given = set(subset)
    unknown = given - set(caf.graph.arguments)
    if unknown:
        raise InvalidFrameworkError(f"subset names undeclared arguments {sorted(unknown)!r}")
    for a in members:
        if a not in costs:
            raise InvalidFrameworkError(f"no cost given for subset argument {a!r}")
        if not costs[a] > 0.0:
            raise InvalidFrameworkError(f"argument {a!r}: cost must be strictly positive")
    return members


def lowered_caf(
    caf: CAF, costs: Mapping[str, float], subset: Iterable[str], t: float
) -> CAF:
    """Framework with subset minima slid toward 0 by t / cost(a), clamped.

    Upper bounds and the intervals of arguments outside ``subset`` are
    untouched.
    """
    if t < 0.0:
        raise ValueError("t must be non-negative")
    members = _check_subset(caf, costs, subset)
    updates = {}
    for a in members:
        iv = caf.intervals[a]
        new_lo = max(0.0, iv.lo - t / costs[a])
        if new_lo != iv.lo:
            updates[a] = Interval(new_lo, iv.hi)
    return caf.with_intervals(updates) if updates else caf


def _bisect_subset(
    caf: CAF,
    sem: SemanticsId,
    costs: Mapping[str, float],
    eps: float,
    members: tuple[str, ...],
    cfg: SolverConfig,
) -> tuple[float, CAF] | None:
    """Smallest line parameter making the subset-lowered framework rational.

    Returns None when even fully collapsing the subset minima does not
    restore rationality.
    """
    t_max = max(costs[a] * caf.intervals[a].lo for a in members)
    if not is_rational(lowered_caf(caf, costs, members, t_max), sem, cfg):
        return None
    lo_t, hi_t = 0.0, t_max
    while hi_t - lo_t >= eps:
        mid = (lo_t + hi_t) / 2.0
        if is_rational(lowered_caf(caf, costs, members, mid), sem, cfg):
            hi_t = mid
        else:
            lo_t = mid
    return hi_t, lowered_caf(caf, costs, members, hi_t)


def _result(
    caf: CAF,
    corrected: CAF,
    costs: Mapping[str, float],
    members: tuple[str, ...],
    t: float,
    strategy: str,
    subset: frozenset[str] | None,
) -> CorrectionResult:
    moved = {
        a: caf.intervals[a].lo - corrected.intervals[a].lo
        for a in members
        if corrected.intervals[a].lo < caf.intervals[a].lo
    }
    total = sum(costs[a] * d for a, d in moved.items())
    return CorrectionResult(
        corrected=corrected,
        total_cost=total,
        modified=frozenset(moved),
        parameter_t=t,
        strategy=strategy,
        subset=subset,
    )


def correct_strategy1(
    caf: CAF,
    sem: SemanticsId,
    costs: Mapping[str, float] | None = None,
    eps: float = 1e-6,
    subset: Iterable[str] | None = None,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> CorrectionResult:
    """Cheapest single-line repair of an irrational framework.

    Bisects the line parameter to resolution ``eps`` over [0, T] where T
    collapses every subset minimum to 0.  ``costs`` defaults to the costs
    stored on the framework, ``subset`` to every argument carrying a cost.

    Raises AlreadyRationalError when there is nothing to repair and
    InfeasibleSubsetError when no parameter works for the given subset.
    """
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    if costs is None:
        costs = caf.costs
    if subset is None:
        subset = [a for a in caf.graph.arguments if a in costs]
    members = _check_subset(caf, costs, subset)
    if not members:
        raise InvalidFrameworkError("subset must name at least one argument")
    if is_rational(caf, sem, cfg):
        raise AlreadyRationalError("framework is already rational")
    found = _bisect_subset(caf, sem, costs, eps, members, cfg)
    if found is None:
        raise InfeasibleSubsetError(
            f"no line parameter over subset {sorted(members)!r} restores rationality"
        )
    t, corrected = found
    return _result(caf, corrected, costs, members, t, "S1", None)


def correct_strategy2(
    caf: CAF,
    sem: SemanticsId,
    costs: Mapping[str, float] | None = None,
    eps: float = 1e-6,
    max_subset_args: int | None = None,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> CorrectionResult:
    """Minimum-cost repair over every non-empty argument subset.

    Ties are broken by smaller subset size, then by declaration order.
    ``max_subset_args`` caps the subset size; without it, frameworks above
    20 arguments are refused since enumeration is exponential.
    """
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    if costs is None:
        costs = caf.costs
    args = [a for a in caf.graph.arguments if a in costs]
    if not args:
        raise InvalidFrameworkError("no argument carries a cost")
    if max_subset_args is None and len(args) > S2_EXACT_LIMIT:
        raise InvalidFrameworkError(
            f"{len(args)} arguments exceed the exact enumeration limit "
            f"({S2_EXACT_LIMIT}); pass max_subset_args to cap subset size"
        )
    if is_rational(caf, sem, cfg):
        raise AlreadyRationalError("framework is already rational")
    max_k = min(len(args), max_subset_args or len(args))
    best: tuple[tuple[float, int, tuple[int, ...]], CorrectionResult] | None = None
    for k in range(1, max_k + 1):
        for picks in itertools.combinations(range(len(args)), k):
            members = tuple(args[i] for i in picks)
            found = _bisect_subset(caf, sem, costs, eps, members, cfg)
            if found is None:
                continue
            t, corrected = found
            res = _result(
                caf, corrected, costs, members, t, "S2", frozenset(members)
            )
            key = (res.total_cost, k, picks)
            if best is None or key < best[0]:
                best = (key, res)
    if best is None:
        raise InfeasibleSubsetError(
            "no enumerated subset restores rationality; raise max_subset_args"
        )
    return best[1]
