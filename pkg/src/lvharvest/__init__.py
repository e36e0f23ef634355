"""Stochastic two-species competition with seasonal coefficients.

Library for the harvested Lotka-Volterra competition model driven by
independent Brownian noises with 1-periodic rates: pathwise simulation,
long-run regime classification from period-averaged quantities, the
closed-form optimal harvesting policy, and Monte Carlo verification tools.
"""

__version__ = "0.1.0"

from .classify import AssumptionFlags, Regime, RegimeReport, check_assumptions, classify
from .config import RunConfig, config_to_json, load_config, parse_config
from .errors import (
    AssumptionViolation,
    DegenerateInput,
    EmptyFeasible,
    EmptyWindow,
    InvalidConfig,
    LVHarvestError,
    NonFinite,
    ParseError,
    RegimeError,
    ValidationError,
)
from .harvest import (
    OptimalPolicy,
    PolicyConditions,
    SensitivityRow,
    grid_search_oracle,
    noise_sensitivity,
    optimal_policy,
    sensitivity_to_csv,
    stationarity_residual,
    surface_to_csv,
    yield_surface,
    yield_theoretical,
)
from .mc import (
    ConvergenceReport,
    EnsembleConfig,
    EnsembleStats,
    PhaseComparison,
    SummaryStats,
    convergence_check,
    empirical_yield,
    periodicity_check,
    run_ensemble,
    split_seed,
    stats_to_json,
)
from .model import (
    DerivedQuantities,
    HarvestEffort,
    ModelParams,
    L_vector,
    b_integral,
    b_integrals,
    deltas,
    derived_quantities,
    drift_diffusion,
    mean_alpha_sq,
    phi,
    phis,
)
from .periodic import Harmonic, PeriodicFn, mean_square_over_period
from .sde import (
    Scheme,
    SimConfig,
    Trajectory,
    log_growth_rate,
    simulate,
    time_average,
    trajectory_to_csv,
)

__all__ = [
    "__version__",
    # periodic
    "PeriodicFn", "Harmonic", "mean_square_over_period",
    # model
    "ModelParams", "HarvestEffort", "DerivedQuantities",
    "b_integral", "b_integrals", "deltas", "phi", "phis", "L_vector",
    "mean_alpha_sq", "derived_quantities", "drift_diffusion",
    # classify
    "Regime", "RegimeReport", "AssumptionFlags", "classify", "check_assumptions",
    # sde
    "Scheme", "SimConfig", "Trajectory", "simulate", "time_average",
    "log_growth_rate", "trajectory_to_csv",
    # harvest
    "OptimalPolicy", "PolicyConditions", "SensitivityRow",
    "yield_theoretical", "optimal_policy", "grid_search_oracle",
    "noise_sensitivity", "stationarity_residual", "yield_surface",
    "sensitivity_to_csv", "surface_to_csv",
    # mc
    "EnsembleConfig", "EnsembleStats", "SummaryStats", "ConvergenceReport",
    "PhaseComparison", "run_ensemble", "empirical_yield", "convergence_check",
    "periodicity_check", "split_seed", "stats_to_json",
    # config
    "RunConfig", "parse_config", "load_config", "config_to_json",
    # errors
    "LVHarvestError", "InvalidConfig", "DegenerateInput", "AssumptionViolation",
    "RegimeError", "NonFinite", "EmptyWindow", "EmptyFeasible", "ParseError",
    "ValidationError",
]
