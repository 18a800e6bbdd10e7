"""Numerical laboratory for a Szegő-kernel Kähler metric on strictly
pseudoconvex domains in C^2."""

from szegolab._core import (
    CurvatureReport,
    DomainSpec,
    KernelEvaluator,
    KernelKind,
    KernelSeries,
    LimitExperimentReport,
    LimitSample,
    ScalingReport,
    SzegolabError,
    admissible_deltas,
    build_series,
    cayley,
    curvature_report,
    exact_ball_evaluator,
    exact_ball_kernel,
    fefferman_density,
    limit_estimate,
    report_csv,
    run_localization_suite,
    run_scaling_suite,
    run_theorem1_suite,
    series_evaluator,
)

__all__ = [
    "CurvatureReport",
    "DomainSpec",
    "KernelEvaluator",
    "KernelKind",
    "KernelSeries",
    "LimitExperimentReport",
    "LimitSample",
    "ScalingReport",
    "SzegolabError",
    "admissible_deltas",
    "build_series",
    "cayley",
    "curvature_report",
    "exact_ball_evaluator",
    "exact_ball_kernel",
    "fefferman_density",
    "limit_estimate",
    "report_csv",
    "run_localization_suite",
    "run_scaling_suite",
    "run_theorem1_suite",
    "series_evaluator",
]
