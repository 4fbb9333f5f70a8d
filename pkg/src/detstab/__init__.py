"""Strong detonation waves of the rescaled inviscid Majda model and their
spectral stability.

The package constructs reaction-zone profiles, evaluates the analytic
ignition-function stability criterion, runs the Sturm-Liouville sign-condition
scan, counts Evans-Lopatinsky determinant zeros by the argument principle,
and reproduces the benchmark Arrhenius parameter-sweep stability maps.
"""

from .errors import (
    DomainError,
    IgnitionLevelError,
    ModeCollisionError,
    PhaseResolutionError,
    TruncationError,
)
from .model import (
    TEMPERATURE_PROFILES,
    T1,
    T2,
    ArrheniusIgnition,
    HomotopyIgnition,
    IgnitionEval,
    IgnitionFunction,
    ModelParams,
    OriginalParams,
    RescaledSystem,
    StepIgnition,
    TabulatedIgnition,
    TemperatureProfile,
    ignition_eval,
    rescale,
    unrescale,
)
from .profile import ProfileTable, ShockTrace, default_truncation, shock_trace, solve_profile
from .criterion import (
    CriterionReport,
    check_arrhenius,
    check_criterion,
    check_criterion_original,
    criterion_bound,
    critical_activation_energy,
    homotopy_family,
)
from .sturm import (
    SLCoefficients,
    SignScan,
    boundary_slope,
    closed_form_sign_field,
    liouville_weight,
    sign_condition_scan,
    sl_coefficients,
    transformed_potential,
)
from .evans import (
    EigenSystem,
    EvansResult,
    ModeSolution,
    WindingCertificate,
    decaying_mode,
    default_radius,
    delta_slope_at_origin,
    evans_determinant,
    evans_determinant_batch,
    homotopy_track,
    jump_vector,
    origin_mode_scale,
    verified_winding_count,
    winding_count,
)
from .grids import GridPoint, GridSpec, bz_t1, bz_t2, custom_grid, grid_by_name
from .sweep import PointOutcome, SweepReport, run_sweep
from .svg import curve_figure, emit_figure

__version__ = "0.1.0"

__all__ = [
    "DomainError", "IgnitionLevelError", "ModeCollisionError",
    "PhaseResolutionError", "TruncationError",
    "ModelParams", "OriginalParams", "RescaledSystem", "rescale", "unrescale",
    "TemperatureProfile", "T1", "T2", "TEMPERATURE_PROFILES",
    "IgnitionFunction", "StepIgnition", "ArrheniusIgnition",
    "TabulatedIgnition", "HomotopyIgnition", "IgnitionEval", "ignition_eval",
    "ProfileTable", "ShockTrace", "solve_profile", "shock_trace",
    "default_truncation",
    "CriterionReport", "check_criterion", "check_arrhenius",
    "check_criterion_original", "critical_activation_energy",
    "criterion_bound", "homotopy_family",
    "SLCoefficients", "SignScan", "sl_coefficients", "sign_condition_scan",
    "closed_form_sign_field", "boundary_slope", "liouville_weight",
    "transformed_potential",
    "EigenSystem", "EvansResult", "ModeSolution", "WindingCertificate",
    "decaying_mode", "jump_vector", "evans_determinant",
    "evans_determinant_batch", "origin_mode_scale", "delta_slope_at_origin",
    "default_radius", "winding_count", "verified_winding_count",
    "homotopy_track",
    "GridPoint", "GridSpec", "bz_t1", "bz_t2", "custom_grid", "grid_by_name",
    "PointOutcome", "SweepReport", "run_sweep",
    "emit_figure", "curve_figure",
    "__version__",
]
