"""Shared builders and independent reference oracles for the test suite."""

from __future__ import annotations

import numpy as np

from cafkit import (
    AttackGraph,
    CAF,
    Interval,
    SemanticsId,
    WAF,
    attackers,
    solve_degrees,
)

ALL_SEMANTICS = (SemanticsId.HBS, SemanticsId.CAR, SemanticsId.MAX)

CHAIN = AttackGraph(("a", "b"), (("a", "b"),))

# mutual pair attacking c, which attacks d (the four-argument showcase graph)
DIAMOND = AttackGraph(
    ("a", "b", "c", "d"),
    (("a", "b"), ("b", "a"), ("a", "c"), ("b", "c"), ("c", "d")),
)


def chain_caf(interval_a: tuple[float, float], interval_b: tuple[float, float],
              costs: dict | None = None) -> CAF:
    return CAF(
        CHAIN,
        {"a": Interval(*interval_a), "b": Interval(*interval_b)},
        costs or {},
    )


def random_graph(rng: np.random.Generator, n: int, p: float = 0.4) -> AttackGraph:
    ids = tuple(f"x{i}" for i in range(n))
    pairs = []
    for src in ids:
        for dst in ids:
            if src != dst and rng.random() < p:
                pairs.append((src, dst))
    return AttackGraph(ids, tuple(pairs))


def random_waf(rng: np.random.Generator, n: int, p: float = 0.4) -> WAF:
    graph = random_graph(rng, n, p)
    return WAF(graph, {a: float(rng.uniform(0.0, 1.0)) for a in graph.arguments})


def random_rational_caf(
    rng: np.random.Generator, n: int, sem: SemanticsId, p: float = 0.4
) -> CAF:
    """Rational-by-construction CAF: intervals straddle an achieved point."""
    waf = random_waf(rng, n, p)
    degrees = solve_degrees(waf, sem)
    intervals = {}
    for a, d in degrees.items():
        lo = d * float(rng.uniform(0.0, 1.0))
        hi = d + (1.0 - d) * float(rng.uniform(0.0, 1.0))
        intervals[a] = Interval(lo, hi)
    return CAF(waf.graph, intervals)


def reference_residual(
    graph: AttackGraph,
    weights: dict[str, float],
    degrees: dict[str, float],
    sem: SemanticsId,
    zero_threshold: float = 1e-12,
) -> float:
    """L-infinity residual of ``degrees`` against the defining equations.

    Written dict-by-dict, independently of the solver's vectorized path.
    """
    worst = 0.0
    for a in graph.arguments:
        atts = attackers(graph, a)
        if sem is SemanticsId.HBS:
            expected = weights[a] / (1.0 + sum(degrees[b] for b in atts))
        elif sem is SemanticsId.MAX:
            strongest = max((degrees[b] for b in atts), default=0.0)
            expected = weights[a] / (1.0 + strongest)
        else:
            live = [b for b in atts if weights[b] > zero_threshold]
            if live:
                k = len(live)
                s = sum(degrees[b] for b in live)
                expected = weights[a] / (1.0 + k + s / k)
            else:
                expected = weights[a]
        worst = max(worst, abs(expected - degrees[a]))
    return worst
