"""Decision procedures for the rationality of a (CAF, semantics) pair.

Under axial-radiality (lowering any single coordinate of an achievable
degree vector keeps it achievable) every decision reduces to checking a
single corner of the interval hyper-rectangle:

  * rational        <=> the all-minima corner is achievable
  * fully rational  <=> the all-maxima corner is achievable

so each check costs one closed-form inversion, no search.  Corner
enumeration is only ever used for diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .framework import ABS_TOL, CAF
from .semantics import DEFAULT_CONFIG, SemanticsId, SolverConfig, is_achievable

#: Largest argument count for which 2^n corner enumeration is attempted.
DEFAULT_CORNER_LIMIT = 16


class NotRationalError(ValueError):
    """An operation that needs a rational framework received an irrational one."""


class RationalityKind(Enum):
    IRRATIONAL = "IRRATIONAL"
    RATIONAL = "RATIONAL"
    FULLY_RATIONAL = "FULLY_RATIONAL"


@dataclass(frozen=True)
class RationalityStatus:
    """Verdict plus corner diagnostics for a (CAF, semantics) pair."""

    kind: RationalityKind
    corners_inside: int
    corners_total: int
    refinable_axes: frozenset[str]


def is_rational(caf: CAF, sem: SemanticsId, cfg: SolverConfig = DEFAULT_CONFIG) -> bool:
    """Some point of the interval box is achievable (min-corner test)."""
    return is_achievable(caf.graph, caf.min_corner(), sem, cfg)


def is_fully_rational(
    caf: CAF, sem: SemanticsId, cfg: SolverConfig = DEFAULT_CONFIG
) -> bool:
    """Every point of the interval box is achievable (max-corner test)."""
    return is_achievable(caf.graph, caf.max_corner(), sem, cfg)


def is_epsilon_rational(
    caf: CAF, sem: SemanticsId, eps: float, cfg: SolverConfig = DEFAULT_CONFIG
) -> bool:
    """Every per-argument top slab of width ``eps`` reaches the degree space.

    True iff eps fits inside every interval and, for each argument a, the
    framework with I(a) replaced by [hi(a) - eps, hi(a)] (others unchanged)
    is rational.
    """
    if eps < 0.0:
        raise ValueError("eps must be non-negative")
    for a in caf.graph.arguments:
        if eps > caf.intervals[a].width + ABS_TOL:
            return False
    mins = caf.min_corner()
    for a in caf.graph.arguments:
        point = dict(mins)
        point[a] = max(0.0, caf.intervals[a].hi - eps)
        if not is_achievable(caf.graph, point, sem, cfg):
            return False
    return True


def _lifted_min_corner(caf: CAF, axis: str) -> dict[str, float]:
    point = caf.min_corner()
    point[axis] = caf.intervals[axis].hi
    return point


def classify_corners(
    caf: CAF,
    sem: SemanticsId,
    corner_limit: int = DEFAULT_CORNER_LIMIT,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> RationalityStatus:
    """Corner diagnostics: box corners inside the degree space plus verdict.

    The kind itself comes from the two single-corner tests; the 2^n corner
    sweep only feeds the ``corners_inside`` count.  ``refinable_axes``
    holds the arguments whose whole upper face lies outside the space
    (face test: the min-corner lifted to the axis maximum is unachievable),
    i.e. the axes along which a non-trivial refinement exists.

    Raises ValueError when the argument count exceeds ``corner_limit``.
    """
    args = caf.graph.arguments
    n = len(args)
    if n > corner_limit:
        raise ValueError(
            f"{n} arguments exceed corner_limit={corner_limit}; "
            "corner enumeration is exponential"
        )
    if is_fully_rational(caf, sem, cfg):
        kind = RationalityKind.FULLY_RATIONAL
    elif is_rational(caf, sem, cfg):
        kind = RationalityKind.RATIONAL
    else:
        kind = RationalityKind.IRRATIONAL
    total = 2**n
    inside = 0
    for mask in range(total):
        point = {
            a: (caf.intervals[a].hi if mask >> i & 1 else caf.intervals[a].lo)
            for i, a in enumerate(args)
        }
        if is_achievable(caf.graph, point, sem, cfg):
            inside += 1
    refinable = frozenset(
        a
        for a in args
        if not is_achievable(caf.graph, _lifted_min_corner(caf, a), sem, cfg)
    )
    return RationalityStatus(kind, inside, total, refinable)


def car_cross_check(
    caf: CAF,
    kind: RationalityKind,
    samples: int = 2000,
    seed: int = 0,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> dict:
    """Sampling audit of a corner-based verdict under the card semantics.

    The corner reductions are only proved for hbs and max; this guard
    rejection-samples the interval box (min and max corners always
    included) under car and reports whether any achievable point was found
    and whether that agrees with ``kind``.  A disagreement on an
    IRRATIONAL verdict is evidence against axial-radiality of car; for a
    RATIONAL verdict agreement is guaranteed since the min-corner itself
    is sampled.
    """
    rng = np.random.Generator(np.random.Philox(seed))
    args = caf.graph.arguments
    candidates = [caf.min_corner(), caf.max_corner()]
    found = False
    checked = 0
    for point in candidates:
        checked += 1
        if is_achievable(caf.graph, point, sem=SemanticsId.CAR, cfg=cfg):
            found = True
            break
    if not found:
        for _ in range(samples):
            point = {
                a: float(rng.uniform(caf.intervals[a].lo, caf.intervals[a].hi))
                for a in args
            }
            checked += 1
            if is_achievable(caf.graph, point, sem=SemanticsId.CAR, cfg=cfg):
                found = True
                break
    return {
        "samples": checked,
        "achievable_found": found,
        "agrees_with_kind": found == (kind is not RationalityKind.IRRATIONAL),
    }
