"""Market invariant estimation: minimum binned squared Hellinger distance
between long-only portfolios and frontier-matched Gaussians."""

from ._hinv import (
    EmpiricalDensity,
    FrontierPoint,
    InvariantReport,
    NormalTarget,
    OptimizerConfig,
    PerturbationSpec,
    ReturnMatrix,
    ScanConfig,
    SensitivityReport,
    __version__,
    bin_density,
    binning_change,
    default_bin_count,
    frontier_scan,
    hellinger_sq,
    hellinger_sq_quadrature_oracle,
    load_prices,
    perturb_returns,
    portfolio_series,
    project_to_constraint_set,
    random_correlation,
    sample_mean_cov,
    sensitivity_binning,
    sensitivity_perturbation,
    simulate_gaussian_market,
    simulate_student_market,
    solve_min_hellinger,
    solve_min_variance,
    sqrt_normal_integral,
)

__all__ = [
    "EmpiricalDensity",
    "FrontierPoint",
    "InvariantReport",
    "NormalTarget",
    "OptimizerConfig",
    "PerturbationSpec",
    "ReturnMatrix",
    "ScanConfig",
    "SensitivityReport",
    "__version__",
    "bin_density",
    "binning_change",
    "default_bin_count",
    "frontier_scan",
    "hellinger_sq",
    "hellinger_sq_quadrature_oracle",
    "load_prices",
    "perturb_returns",
    "portfolio_series",
    "project_to_constraint_set",
    "random_correlation",
    "sample_mean_cov",
    "sensitivity_binning",
    "sensitivity_perturbation",
    "simulate_gaussian_market",
    "simulate_student_market",
    "solve_min_hellinger",
    "solve_min_variance",
    "sqrt_normal_integral",
]
