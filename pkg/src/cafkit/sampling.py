"""Sampling of valid initial weights consistent with a rational framework.

Entries are produced rejection-first: degree vectors drawn uniformly from
the interval box are kept when achievable.  After a run of consecutive
misses the sampler falls back to a staircase walk that is guaranteed to
terminate: starting from the all-minima corner (achievable by rationality)
it visits the axes in seeded random order, bisects the largest achievable
value of each coordinate with the others held fixed, and draws uniformly
between the interval minimum and that bound; every intermediate point stays
achievable by axial-radiality.  Staircase entries are valid but not
uniformly distributed over the feasible region.

Randomness comes from a seeded counter-based generator (Philox 4x64) so
batches are reproducible: identical (caf, sem, n, max_tries, seed) inputs
yield identical batches.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .framework import CAF, DegreeVector, WeightVector
from .rationality import NotRationalError, is_rational
from .semantics import (
    DEFAULT_CONFIG,
    SemanticsId,
    SolverConfig,
    invert_weights,
    is_achievable,
)

#: Bisection resolution of the staircase coordinate bound.
STAIRCASE_RESOLUTION = 1e-9

REJECTION = "rejection"
STAIRCASE = "staircase"


@dataclass(frozen=True)
class SampleEntry:
    weights: WeightVector
    degrees: DegreeVector
    method: str


@dataclass(frozen=True)
class SampleBatch:
    """Sampled weight/degree pairs plus the number of draws it took."""

    entries: tuple[SampleEntry, ...]
    attempted: int


def _staircase_point(
    caf: CAF, sem: SemanticsId, rng: np.random.Generator, cfg: SolverConfig
) -> DegreeVector:
    args = caf.graph.arguments
    point = caf.min_corner()
    for idx in rng.permutation(len(args)):
        a = args[int(idx)]
        lo, hi = caf.intervals[a].lo, caf.intervals[a].hi
        trial = dict(point)
        trial[a] = hi
        if is_achievable(caf.graph, trial, sem, cfg):
            bound = hi
        else:
            l, r = point[a], hi
            while r - l > STAIRCASE_RESOLUTION:
                m = (l + r) / 2.0
                trial[a] = m
                if is_achievable(caf.graph, trial, sem, cfg):
                    l = m
                else:
                    r = m
            bound = l
        point[a] = float(rng.uniform(lo, bound)) if bound > lo else lo
    return point


def sample_weights(
    caf: CAF,
    sem: SemanticsId,
    n: int,
    max_tries: int = 200,
    seed: int = 0,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> SampleBatch:
    """Sample ``n`` valid initial weightings for a rational framework.

    Every returned entry has degrees inside the framework's intervals,
    weights inside [0, 1], and forward-solving the weights reproduces the
    degrees.

    Raises NotRationalError on an irrational input and ValueError when
    ``n`` or ``max_tries`` is below 1.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if max_tries < 1:
        raise ValueError("max_tries must be at least 1")
    if not is_rational(caf, sem, cfg):
        raise NotRationalError("sampling requires a rational framework")
    rng = np.random.Generator(np.random.Philox(seed))
    args = caf.graph.arguments
    entries: list[SampleEntry] = []
    attempted = 0
    for _ in range(n):
        degrees: DegreeVector | None = None
        method = REJECTION
        for _ in range(max_tries):
            attempted += 1
            candidate = {
                a: float(rng.uniform(caf.intervals[a].lo, caf.intervals[a].hi))
                for a in args
            }
            if is_achievable(caf.graph, candidate, sem, cfg):
                degrees = candidate
                break
        if degrees is None:
            attempted += 1
            degrees = _staircase_point(caf, sem, rng, cfg)
            method = STAIRCASE
        weights = {
            a: min(1.0, max(0.0, w))
            for a, w in invert_weights(caf.graph, degrees, sem, cfg).items()
        }
        entries.append(SampleEntry(weights, degrees, method))
    return SampleBatch(tuple(entries), attempted)
