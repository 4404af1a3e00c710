from ._errors import (
    DegenerateDesign,
    DegenerateDivergence,
    DegenerateOverlap,
    DesignError,
    GridMismatch,
    GridTooCoarse,
    GridTruncation,
    InputError,
    ModeNotGuided,
    NoSignChange,
    NonConvergent,
    NumericalError,
    OutOfValidityRange,
    RegimeMismatch,
    TospdcError,
)
from ._flux_method import FluxMethod, Regime
from ._mode_id import ModeId
from ._numerics import NumericsConfig, default_numerics
from ._process import CenterProperties, ProcessConfig, PumpEnvelope, SpectralFilter
from ._sweep_parameter import SweepParameter
from .designs import Design, broadened, load_design, parse_design, preset
from .dispersion import FUSED_SILICA, SellmeierModel, load_material, refractive_index
from .fiber_modes import (
    FiberSpec,
    ModeProfile,
    group_slowness,
    mode_profile,
    propagation_constant,
    solve_neff,
    tabulate_dispersion,
)
from .flux import (
    FluxResult,
    characteristic_length,
    design_report,
    eta_cw,
    flux_analytic,
    flux_asymptotic,
    flux_by_method,
    flux_cw,
    flux_pulsed_numeric,
    h_factor,
    phi_parameter,
    sweep,
    tau_coefficients,
)
from .nonlinearity import Chi3, NonlinearCoefficients, compute_coefficients, gamma_tospdc
from .phasematching import (
    ProcessFrequencies,
    degenerate_wavelength_curve,
    delta_k,
    emission_contour_vs_pump,
    emission_contour_vs_radius,
    find_phasematching_radius,
    gamma_map,
)
from .triplet_state import (
    filtered_jsa,
    jsa,
    jsa_slice_rotated,
    marginal_single,
    marginal_two_photon,
)

__version__ = "0.1.0"
__all__ = ("SellmeierModel", "FUSED_SILICA", "refractive_index", "load_material",
           "FiberSpec", "ModeId", "ModeProfile", "solve_neff", "propagation_constant",
           "group_slowness", "mode_profile", "tabulate_dispersion",
           "Chi3", "NonlinearCoefficients", "compute_coefficients", "gamma_tospdc",
           "ProcessFrequencies", "delta_k", "find_phasematching_radius",
           "degenerate_wavelength_curve", "emission_contour_vs_pump",
           "emission_contour_vs_radius", "gamma_map",
           "PumpEnvelope", "SpectralFilter", "ProcessConfig", "CenterProperties",
           "jsa", "jsa_slice_rotated", "filtered_jsa", "marginal_two_photon", "marginal_single",
           "FluxMethod", "Regime", "SweepParameter", "FluxResult", "flux_pulsed_numeric",
           "flux_cw", "eta_cw", "flux_analytic", "flux_asymptotic", "flux_by_method", "h_factor",
           "tau_coefficients", "characteristic_length", "phi_parameter", "sweep",
           "design_report", "Design", "parse_design", "load_design", "preset", "broadened",
           "NumericsConfig", "default_numerics",
           "TospdcError", "InputError", "NumericalError", "OutOfValidityRange", "GridMismatch",
           "DegenerateDesign", "DesignError", "ModeNotGuided", "NoSignChange", "GridTooCoarse",
           "DegenerateOverlap", "GridTruncation", "NonConvergent", "DegenerateDivergence",
           "RegimeMismatch",)
