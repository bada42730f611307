"""Energy and carbon footprint estimation for AI-driven IoT/edge workload scenarios."""

from carbonscope._core import (
    CI_LIMITATION_DISCLAIMER,
    DEFAULT_TRANSFER_EFFICIENCY,
    ConfigError,
    CoverageError,
    Error,
    GridProfile,
    ModelProfile,
    ParseError,
    PowerModel,
    Scenario,
    ValidationError,
    __version__,
    apply_pue,
    compare_locations,
    compare_models,
    constant_grid,
    energy_from_power,
    estimate,
    implied_mean_power_w,
    inference_duration_s,
    inference_energy_wh,
    load_grid_csv,
    load_model_profiles,
    load_power_model,
    load_scenario,
    mix_to_ci,
    pareto_front,
    relative_reduction_pct,
    sweep_resources,
    sweep_start_time,
    transfer_duration_s,
    transfer_energy_j,
    wh_to_joules,
)

__all__ = [
    "CI_LIMITATION_DISCLAIMER",
    "DEFAULT_TRANSFER_EFFICIENCY",
    "ConfigError",
    "CoverageError",
    "Error",
    "GridProfile",
    "ModelProfile",
    "ParseError",
    "PowerModel",
    "Scenario",
    "ValidationError",
    "__version__",
    "apply_pue",
    "compare_locations",
    "compare_models",
    "constant_grid",
    "energy_from_power",
    "estimate",
    "implied_mean_power_w",
    "inference_duration_s",
    "inference_energy_wh",
    "load_grid_csv",
    "load_model_profiles",
    "load_power_model",
    "load_scenario",
    "mix_to_ci",
    "pareto_front",
    "relative_reduction_pct",
    "sweep_resources",
    "sweep_start_time",
    "transfer_duration_s",
    "transfer_energy_j",
    "wh_to_joules",
]
