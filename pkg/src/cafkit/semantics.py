"""Weighted gradual semantics: forward evaluation, inversion, achievability.

Acceptability degrees solve one coupled fixed-point equation per argument:

    hbs   s(a) = w(a) / (1 + sum_{b in Att(a)} s(b))
    car   s(a) = w(a) / (1 + k + S / k)    over Att*(a) = {b in Att(a) : w(b) > 0}
          with k = |Att*(a)| and S the summed degrees of Att*(a);
          s(a) = w(a) when Att*(a) is empty
    max   s(a) = w(a) / (1 + max_{b in Att(a)} s(b)), max over the empty set = 0

Every denominator is at least 1, so each map sends [0, 1]^n into itself and
plain fixed-point iteration from x0 = w converges at desk scale; the loop
stops once the residual against the defining equations drops below the
configured tolerance.

The inverse direction is closed form: each weight is the target degree times
its own denominator, e.g. for hbs, w = x + diag(x) A x with A the adjacency
matrix.  For car, attacker membership is read off the degrees, exploiting
s(b) = 0 iff w(b) = 0.  A degree vector is achievable iff every inverted
weight stays within [0, 1] (up to a small boundary slack).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .framework import (
    ABS_TOL,
    AttackGraph,
    DegreeVector,
    InvalidFrameworkError,
    WAF,
    WeightVector,
    _validated_values,
)

#: Upper-bound slack for achievability so that boundary points (inverted
#: weight exactly 1) do not flip on rounding.
ACHIEVABILITY_SLACK = 1e-9


class SemanticsId(Enum):
    """Selector among the three supported weighted gradual semantics."""

    HBS = "hbs"
    CAR = "car"
    MAX = "max"

    @classmethod
    def from_string(cls, name: str) -> "SemanticsId":
        try:
            return cls(name.lower())
        except ValueError:
            raise InvalidFrameworkError(
                f"unknown semantics {name!r}; expected one of hbs, car, max"
            ) from None


@dataclass(frozen=True)
class SolverConfig:
    """Numerical knobs for the fixed-point solver and inversion.

    ``tolerance`` is the L-infinity residual at which iteration stops,
    ``zero_degree_threshold`` decides Att* membership for the card-based
    semantics.
    """

    tolerance: float = 1e-12
    max_iterations: int = 10000
    zero_degree_threshold: float = 1e-12

    def __post_init__(self) -> None:
        if not self.tolerance > 0.0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if not self.zero_degree_threshold > 0.0:
            raise ValueError("zero_degree_threshold must be positive")


DEFAULT_CONFIG = SolverConfig()


class ConvergenceError(RuntimeError):
    """Fixed-point iteration failed to reach the tolerance."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


@lru_cache(maxsize=512)
def _attack_matrix(graph: AttackGraph) -> np.ndarray:
    """Boolean matrix with [i, j] true iff argument j attacks argument i."""
    n = len(graph.arguments)
    mat = np.zeros((n, n), dtype=bool)
    for src, dst in graph.attacks:
        mat[graph.index_of(dst), graph.index_of(src)] = True
    mat.setflags(write=False)
    return mat


def _as_array(graph: AttackGraph, values, what: str) -> np.ndarray:
    checked = _validated_values(graph, values, what)
    return np.array([checked[a] for a in graph.arguments], dtype=float)


def _row_max(mat: np.ndarray, x: np.ndarray) -> np.ndarray:
    # per-row maximum of attacker degrees; rows without attackers give 0
    return np.where(mat, x[np.newaxis, :], 0.0).max(axis=1)


def _car_terms(
    mat: np.ndarray, basis: np.ndarray, x: np.ndarray, threshold: float
) -> tuple[np.ndarray, np.ndarray]:
    """Attacker count k and degree sum S over Att*, one entry per argument.

    ``basis`` holds the per-attacker values deciding Att* membership:
    initial weights in the forward direction, degrees when inverting.
    """
    active = mat & (basis > threshold)[np.newaxis, :]
    k = active.sum(axis=1).astype(float)
    s = (active * x[np.newaxis, :]).sum(axis=1)
    return k, s


def _step(
    sem: SemanticsId, mat: np.ndarray, w: np.ndarray, x: np.ndarray, threshold: float
) -> np.ndarray:
    if sem is SemanticsId.HBS:
        return w / (1.0 + mat @ x)
    if sem is SemanticsId.MAX:
        return w / (1.0 + _row_max(mat, x))
    k, s = _car_terms(mat, w, x, threshold)
    denom = 1.0 + k + np.divide(s, k, out=np.zeros_like(s), where=k > 0)
    return np.where(k > 0, w / denom, w)


def solve_degrees(
    waf: WAF, sem: SemanticsId, cfg: SolverConfig = DEFAULT_CONFIG
) -> DegreeVector:
    """Acceptability degrees of ``waf`` under ``sem``.

    The returned vector satisfies the semantics' fixed-point equation at
    every argument with L-infinity residual below ``cfg.tolerance``, and
    every degree lies in [0, w(a)].

    Raises ConvergenceError if the iteration does not settle within
    ``cfg.max_iterations``.
    """
    args = waf.graph.arguments
    if not args:
        return {}
    mat = _attack_matrix(waf.graph)
    w = np.array([waf.weights[a] for a in args], dtype=float)
    x = w.copy()
    residual = np.inf
    for _ in range(cfg.max_iterations):
        fx = _step(sem, mat, w, x, cfg.zero_degree_threshold)
        residual = float(np.max(np.abs(fx - x)))
        if residual < cfg.tolerance:
            return dict(zip(args, x.tolist()))
        x = fx
    raise ConvergenceError(
        f"no fixed point after {cfg.max_iterations} iterations "
        f"(residual {residual:.3e})",
        residual,
    )


def invert_weights(
    graph: AttackGraph,
    degrees: DegreeVector,
    sem: SemanticsId,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> WeightVector:
    """Initial weights that would produce ``degrees`` under ``sem``.

    The result is unclamped: entries above 1 simply mean the degree vector
    is not achievable with weights in [0, 1].  When all returned weights do
    lie in [0, 1], forward-solving them reproduces ``degrees``.
    """
    args = graph.arguments
    if not args:
        return {}
    mat = _attack_matrix(graph)
    x = _as_array(graph, degrees, "degree")
    if sem is SemanticsId.HBS:
        w = x * (1.0 + mat @ x)
    elif sem is SemanticsId.MAX:
        w = x * (1.0 + _row_max(mat, x))
    else:
        k, s = _car_terms(mat, x, x, cfg.zero_degree_threshold)
        denom = 1.0 + k + np.divide(s, k, out=np.zeros_like(s), where=k > 0)
        w = np.where(k > 0, x * denom, x)
    return dict(zip(args, w.tolist()))


def is_achievable(
    graph: AttackGraph,
    degrees: DegreeVector,
    sem: SemanticsId,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> bool:
    """Whether some weighting in [0, 1] realizes ``degrees`` under ``sem``."""
    inverted = invert_weights(graph, degrees, sem, cfg)
    return all(v <= 1.0 + ACHIEVABILITY_SLACK for v in inverted.values())

