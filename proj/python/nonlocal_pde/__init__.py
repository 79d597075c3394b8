"""Python bindings for the nonlocal adhesion solvers."""

from ._core import (
    ConfigError,
    DiagnosticError,
    SolverError,
    classify_regime,
    fd_step,
    fem2d_step,
    fem_step,
    fv_step,
    gaussian_sum_ic,
    k_fft_1d,
    k_fft_2d,
    k_trapezoid_1d,
    perturbed_constant_ic,
    perturbed_constant_ic_2d,
    predicted_regime,
    run_config,
    sorting_metrics,
)

__all__ = [
    "ConfigError",
    "DiagnosticError",
    "SolverError",
    "classify_regime",
    "fd_step",
    "fem2d_step",
    "fem_step",
    "fv_step",
    "gaussian_sum_ic",
    "k_fft_1d",
    "k_fft_2d",
    "k_trapezoid_1d",
    "perturbed_constant_ic",
    "perturbed_constant_ic_2d",
    "predicted_regime",
    "run_config",
    "sorting_metrics",
]
