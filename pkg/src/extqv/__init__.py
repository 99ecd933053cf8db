"""Simulation of 1-D fast/slow multiscale SDEs and estimation of the
homogenized diffusion coefficient from extrema-based path statistics."""

__version__ = "0.1.0"

from .estimators import (
    EstimatorSpec,
    ExtremalPartition,
    evaluate_estimator,
    ext_qv,
    ext_qv_crossterm,
    extremal_partition,
    quadratic_variation,
    subsampled_qv,
    total_2_variation,
)
from .models import (
    CATALOG,
    CenteringReport,
    GaussianInvariant,
    MultiscaleModel,
    UnknownModelError,
    get_model,
    model_ids,
    ou_finite_eps_expectation,
    theoretical_sigma2,
    verify_centering,
)
from .montecarlo import (
    CellResult,
    ComparisonReport,
    ExperimentConfig,
    ExperimentResult,
    SlopeFit,
    compare_estimators,
    config_digest,
    iid_gaussian_extqv_expectation,
    run_cell,
    slope_fit,
    sweep,
)
from .sdecore import (
    Grid,
    RngStream,
    SamplePath,
    SimConfig,
    SimulationUnstableError,
    make_rng,
    simulate,
    subsample,
)

__all__ = [
    "__version__",
    "CATALOG",
    "CellResult",
    "CenteringReport",
    "ComparisonReport",
    "EstimatorSpec",
    "ExperimentConfig",
    "ExperimentResult",
    "ExtremalPartition",
    "GaussianInvariant",
    "Grid",
    "MultiscaleModel",
    "RngStream",
    "SamplePath",
    "SimConfig",
    "SimulationUnstableError",
    "SlopeFit",
    "UnknownModelError",
    "compare_estimators",
    "config_digest",
    "evaluate_estimator",
    "ext_qv",
    "ext_qv_crossterm",
    "extremal_partition",
    "get_model",
    "iid_gaussian_extqv_expectation",
    "make_rng",
    "model_ids",
    "ou_finite_eps_expectation",
    "quadratic_variation",
    "run_cell",
    "simulate",
    "slope_fit",
    "subsample",
    "subsampled_qv",
    "sweep",
    "theoretical_sigma2",
    "total_2_variation",
    "verify_centering",
]
