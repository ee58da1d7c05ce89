"""Windowed volume-price model fitting, divergence scoring and ranking.

Thin wrapper over the C++ core; the heavy lifting (distribution evaluation,
least-squares CDF fits, generalized Kullback-Leibler distances, seeded
sampling) lives in ``volmodel._core``.
"""

from ._core import (
    EcdfPoint,
    EmpiricalDistribution,
    FitOptions,
    FitResult,
    HistogramBin,
    ModelKind,
    ModelParams,
    __version__,
    build_empirical,
    cdf,
    fit_cdf,
    generalized_kl,
    initial_params,
    log_gamma,
    log_pdf,
    model_name,
    pdf,
    regularized_incomplete_gamma,
    relative_errors,
    sample,
    standard_distance,
    tail_distance,
)

__all__ = [
    "EcdfPoint",
    "EmpiricalDistribution",
    "FitOptions",
    "FitResult",
    "HistogramBin",
    "ModelKind",
    "ModelParams",
    "__version__",
    "build_empirical",
    "cdf",
    "fit_cdf",
    "generalized_kl",
    "initial_params",
    "log_gamma",
    "log_pdf",
    "model_name",
    "pdf",
    "regularized_incomplete_gamma",
    "relative_errors",
    "sample",
    "standard_distance",
    "tail_distance",
]
