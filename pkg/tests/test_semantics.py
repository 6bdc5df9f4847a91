import math

import numpy as np
import pytest

from cafkit import (
    AttackGraph,
    ConvergenceError,
    Interval,
    InvalidFrameworkError,
    SemanticsId,
    SolverConfig,
    WAF,
    invert_weights,
    is_achievable,
    solve_degrees,
)

from helpers import ALL_SEMANTICS, CHAIN, DIAMOND, random_waf, reference_residual

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0  # fixed point of x = 1/(1+x)


def unit_waf(graph):
    return WAF(graph, {a: 1.0 for a in graph.arguments})


# --- forward solving -------------------------------------------------------

def test_hbs_degrees_on_showcase_graph():
    degrees = solve_degrees(unit_waf(DIAMOND), SemanticsId.HBS)
    assert degrees["a"] == pytest.approx(GOLDEN, abs=1e-9)
    assert degrees["b"] == pytest.approx(GOLDEN, abs=1e-9)
    assert degrees["c"] == pytest.approx(1.0 / (1.0 + 2.0 * GOLDEN), abs=1e-9)
    assert degrees["d"] == pytest.approx(1.0 / (1.0 + degrees["c"]), abs=1e-9)
    # the published three-decimal values
    assert degrees["a"] == pytest.approx(0.618, abs=1e-3)
    assert degrees["c"] == pytest.approx(0.447, abs=1e-3)
    assert degrees["d"] == pytest.approx(0.691, abs=1e-3)


@pytest.mark.parametrize("sem", ALL_SEMANTICS)
def test_no_attacks_means_degrees_equal_weights(sem):
    graph = AttackGraph(("p", "q", "r"), ())
    waf = WAF(graph, {"p": 0.3, "q": 0.0, "r": 1.0})
    assert solve_degrees(waf, sem) == waf.weights


def test_car_two_unit_attackers():
    graph = AttackGraph(("t", "u", "v"), (("u", "t"), ("v", "t")))
    degrees = solve_degrees(unit_waf(graph), SemanticsId.CAR)
    # attackers are unattacked, so their degree is 1; k=2, S=2
    assert degrees["t"] == pytest.approx(1.0 / (1.0 + 2.0 + 2.0 / 2.0), abs=1e-12)


def test_car_ignores_zero_weight_attackers():
    waf = WAF(CHAIN, {"a": 0.0, "b": 0.8})
    degrees = solve_degrees(waf, SemanticsId.CAR)
    assert degrees["b"] == pytest.approx(0.8, abs=1e-12)


def test_max_unattacked_uses_zero():
    waf = WAF(CHAIN, {"a": 0.5, "b": 1.0})
    degrees = solve_degrees(waf, SemanticsId.MAX)
    assert degrees["a"] == pytest.approx(0.5, abs=1e-12)
    assert degrees["b"] == pytest.approx(1.0 / 1.5, abs=1e-12)


def test_solver_reports_non_convergence():
    cfg = SolverConfig(max_iterations=1)
    with pytest.raises(ConvergenceError) as exc_info:
        solve_degrees(unit_waf(DIAMOND), SemanticsId.HBS, cfg)
    assert exc_info.value.residual > 0.0


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(tolerance=0.0)
    with pytest.raises(ValueError):
        SolverConfig(max_iterations=0)


def test_semantics_from_string():
    assert SemanticsId.from_string("HBS") is SemanticsId.HBS
    assert SemanticsId.from_string("max") is SemanticsId.MAX
    with pytest.raises(InvalidFrameworkError):
        SemanticsId.from_string("euler")


# --- inversion -------------------------------------------------------------

def test_max_inversion_of_showcase_degrees():
    degrees = solve_degrees(unit_waf(DIAMOND), SemanticsId.HBS)
    weights = invert_weights(DIAMOND, degrees, SemanticsId.MAX)
    assert weights["a"] == pytest.approx(1.0, abs=1e-3)
    assert weights["b"] == pytest.approx(1.0, abs=1e-3)
    assert weights["c"] == pytest.approx(0.723, abs=1e-3)
    assert weights["d"] == pytest.approx(1.0, abs=1e-3)


def test_hbs_inversion_of_showcase_degrees():
    degrees = solve_degrees(unit_waf(DIAMOND), SemanticsId.HBS)
    weights = invert_weights(DIAMOND, degrees, SemanticsId.HBS)
    for a in DIAMOND.arguments:
        assert weights[a] == pytest.approx(1.0, abs=1e-3)


def test_inversion_is_unclamped():
    weights = invert_weights(CHAIN, {"a": 0.9, "b": 0.6}, SemanticsId.HBS)
    assert weights["b"] == pytest.approx(0.6 * 1.9, abs=1e-12)
    assert weights["a"] == pytest.approx(0.9, abs=1e-12)


def test_inversion_rejects_bad_degrees():
    with pytest.raises(InvalidFrameworkError):
        invert_weights(CHAIN, {"a": 0.5}, SemanticsId.HBS)
    with pytest.raises(InvalidFrameworkError):
        invert_weights(CHAIN, {"a": 0.5, "b": 1.2}, SemanticsId.HBS)


# --- achievability ---------------------------------------------------------

def test_boundary_point_is_achievable():
    assert is_achievable(CHAIN, {"a": 0.8, "b": 5.0 / 9.0}, SemanticsId.HBS)


def test_point_above_curve_is_not_achievable():
    assert not is_achievable(CHAIN, {"a": 0.9, "b": 0.6}, SemanticsId.HBS)


@pytest.mark.parametrize("sem", ALL_SEMANTICS)
def test_origin_is_achievable(sem):
    assert is_achievable(DIAMOND, {a: 0.0 for a in DIAMOND.arguments}, sem)


# --- properties ------------------------------------------------------------

@pytest.mark.parametrize("sem", ALL_SEMANTICS)
def test_round_trip_on_random_wafs(sem):
    rng = np.random.default_rng(42)
    for _ in range(60):
        waf = random_waf(rng, int(rng.integers(1, 11)))
        degrees = solve_degrees(waf, sem)
        recovered = invert_weights(waf.graph, degrees, sem)
        for a in waf.graph.arguments:
            assert recovered[a] == pytest.approx(waf.weights[a], abs=1e-6)


@pytest.mark.parametrize("sem", ALL_SEMANTICS)
def test_degree_bounded_by_weight(sem):
    rng = np.random.default_rng(7)
    for _ in range(30):
        waf = random_waf(rng, 6)
        degrees = solve_degrees(waf, sem)
        for a in waf.graph.arguments:
            assert degrees[a] <= waf.weights[a] + 1e-12


@pytest.mark.parametrize("sem", ALL_SEMANTICS)
def test_fixed_point_residual_below_tolerance(sem):
    rng = np.random.default_rng(11)
    for _ in range(20):
        waf = random_waf(rng, 7)
        degrees = solve_degrees(waf, sem)
        assert reference_residual(waf.graph, waf.weights, degrees, sem) < 1e-12


@pytest.mark.parametrize("sem", ALL_SEMANTICS)
def test_single_coordinate_lowering_stays_achievable(sem):
    rng = np.random.default_rng(23)
    for _ in range(40):
        waf = random_waf(rng, 6)
        degrees = solve_degrees(waf, sem)
        a = waf.graph.arguments[int(rng.integers(len(waf.graph.arguments)))]
        lowered = dict(degrees)
        lowered[a] = degrees[a] - float(rng.uniform(0.0, degrees[a]))
        assert is_achievable(waf.graph, lowered, sem)
