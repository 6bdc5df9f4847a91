"""Elicitation toolkit for acceptability-degree intervals in weighted
argumentation frameworks: gradual semantics evaluation and inversion,
interval rationality checks, refinement, minimal-cost correction and
valid-weight sampling."""

from .correction import (
    AlreadyRationalError,
    CorrectionResult,
    CostPreset,
    InfeasibleSubsetError,
    correct_strategy1,
    correct_strategy2,
    cost_presets,
    lowered_caf,
)
from .framework import (
    ABS_TOL,
    AttackGraph,
    CAF,
    DegreeVector,
    Interval,
    InvalidFrameworkError,
    WAF,
    WeightVector,
    attackers,
    caf_to_document,
    parse_caf,
    parse_degrees,
    parse_waf,
    serialize_caf,
)
from .rationality import (
    NotRationalError,
    RationalityKind,
    RationalityStatus,
    car_cross_check,
    classify_corners,
    is_epsilon_rational,
    is_fully_rational,
    is_rational,
)
from .refinement import (
    RefinementReport,
    is_better_refinement,
    is_refinement,
    refine,
)
from .sampling import SampleBatch, SampleEntry, sample_weights
from .semantics import (
    ACHIEVABILITY_SLACK,
    ConvergenceError,
    DEFAULT_CONFIG,
    SemanticsId,
    SolverConfig,
    invert_weights,
    is_achievable,
    solve_degrees,
)

__version__ = "0.1.0"

__all__ = [
    "ABS_TOL",
    "ACHIEVABILITY_SLACK",
    "AlreadyRationalError",
    "AttackGraph",
    "CAF",
    "ConvergenceError",
    "CorrectionResult",
    "CostPreset",
    "DEFAULT_CONFIG",
    "DegreeVector",
    "InfeasibleSubsetError",
    "Interval",
    "InvalidFrameworkError",
    "NotRationalError",
    "RationalityKind",
    "RationalityStatus",
    "RefinementReport",
    "SampleBatch",
    "SampleEntry",
    "SemanticsId",
    "SolverConfig",
    "WAF",
    "WeightVector",
    "attackers",
    "caf_to_document",
    "car_cross_check",
    "classify_corners",
    "correct_strategy1",
    "correct_strategy2",
    "cost_presets",
    "invert_weights",
    "is_achievable",
    "is_better_refinement",
    "is_epsilon_rational",
    "is_fully_rational",
    "is_rational",
    "is_refinement",
    "lowered_caf",
    "parse_caf",
    "parse_degrees",
    "parse_waf",
    "refine",
    "sample_weights",
    "serialize_caf",
    "solve_degrees",
]
