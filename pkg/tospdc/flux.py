"""
Absolute triplet emission rates and conversion efficiencies.

The pulsed-pump rate is a triple integral over the emitted detunings. It is carried
out in rotated coordinates: a trapezoid rule along nu_plus (the energy-conservation
axis, where the integrand is a narrow Gaussian) and, for every nu_plus, a tensor
trapezoid rule over the (nu_A, nu_B) plane that resolves every sinc lobe of the
phasematching function. The rotation has unit Jacobian.
"""
import logging
import warnings
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple, TypedDict

import numpy as np
from scipy.constants import c, hbar, pi
from scipy.integrate import trapezoid
from scipy.special import erf

from ._csv import write_rows
from ._defaults import Defaults
from ._errors import (
    DegenerateDesign,
    DegenerateDivergence,
    DesignError,
    NonConvergent,
    RegimeMismatch,
)
from ._flux_method import FluxMethod, Regime
from ._mode_id import ModeId
from ._numerics import NumericsConfig, default_numerics
from ._process import CenterProperties, ProcessConfig, ProcessModel, center_properties
from ._sweep_parameter import SweepParameter
from ._utils import ordered_map
from .dispersion import omega_to_wavelength, refractive_index_at_omega
from .fiber_modes import group_slowness
from .nonlinearity import nonlinear_phase
from .phasematching import ProcessFrequencies
from .triplet_state import RotatedCoords, from_rotated

__all__ = ("ProcessConfig", "CenterProperties", "center_properties", "TauCoefficients",
           "FluxResult", "IntegrationDiagnostics", "SweepRow", "h_factor", "h_center",
           "flux_pulsed_numeric", "flux_cw", "eta_cw", "tau_coefficients",
           "characteristic_length", "phi_parameter", "braced_factor", "flux_analytic",
           "flux_asymptotic", "flux_by_method", "sweep", "pump_photon_rate",
           "conversion_efficiency", "design_report", "write_sweep_csv",)

logger = logging.getLogger(__name__)

# Directions of the radial scan that sizes the in-plane integration square
_SCAN_DIRECTIONS = 24
_SCAN_RADII = 256
# Filter amplitudes are negligible beyond this many filter bandwidths
_FILTER_EXTENT = 3.5
# nu_plus is integrated over +/- this many pump bandwidths
_PLUS_EXTENT = 2.5
# Samples per axis of the grid probing the phase gradient
_SCAN_POINTS = 65
# Maximum number of integrand samples evaluated at once
_CHUNK = 1 << 20
# Below this Phi the braced factor is taken from its Taylor series
_PHI_SERIES = 1e-6


@dataclass(frozen=True)
class TauCoefficients:
    """
    Group-slowness walk-off times tau_mu = L (k'_p0 - k'_mu0) in seconds.
    """

    tau_r: float
    tau_s: float
    tau_i: float

    def as_tuple(self) -> Tuple[float, float, float]:
        return self.tau_r, self.tau_s, self.tau_i


class IntegrationDiagnostics(TypedDict, total=False):
    """
    Describes how a flux value was obtained.
    """

    plane_points: int
    """Samples per in-plane axis of the accepted quadrature."""

    plus_points: int
    """Samples along nu_plus."""

    extent: float
    """Half-width (rad/s) of the in-plane integration square."""

    refinements: int
    """Number of grid doublings performed."""

    relative_change: float
    """Relative change of the result under the last grid doubling."""

    phi: float
    """Walk-off parameter Phi of the closed-form expression."""

    characteristic_length: float
    """Characteristic length L0 in meters."""

    regime: str
    """Asymptotic regime used."""


@dataclass(frozen=True)
class FluxResult:
    """
    Emitted triplets per second and conversion efficiency of one evaluation.
    """

    n: float
    """Triplets per second."""

    eta: float
    """Triplets per pump photon."""

    method: FluxMethod
    diagnostics: IntegrationDiagnostics = field(default_factory=lambda: IntegrationDiagnostics(),
                                                compare=False)

    def __post_init__(self) -> None:
        if not self.n >= 0:
            raise NonConvergent(f"Negative or undefined flux {self.n} triplets/s")


def pump_photon_rate(average_power: float, omega_p0: float) -> float:
    """
    Return the number of pump photons per second p / (hbar omega_p0).
    """
    return average_power / (hbar * omega_p0)


def conversion_efficiency(n: float, average_power: float, omega_p0: float) -> float:
    """
    Return n / N_p; zero when the pump is off.
    """
    if average_power == 0:
        return 0.0
    return n / pump_photon_rate(average_power, omega_p0)


def _result(config: ProcessConfig, n: float, method: FluxMethod,
            diagnostics: IntegrationDiagnostics) -> FluxResult:
    eta = conversion_efficiency(n, config.average_power, config.pump.omega_p0)
    return FluxResult(n=n, eta=eta, method=method, diagnostics=diagnostics)


def h_factor(config: ProcessConfig, freqs: ProcessFrequencies, *,
             numerics: NumericsConfig = default_numerics) -> float:
    """
    Return h = prod_mu k'_mu omega_mu / n_mu^2 at the emitted frequencies of `freqs`.

    Group slownesses come from the HE11 solver and indices from the core material.

    :raises ModeNotGuided: If HE11 is not guided at an emitted frequency.
    """
    result = 1.0
    for omega in freqs.emitted:
        k_prime = group_slowness(config.fiber, ModeId.HE11, omega, numerics=numerics)
        n = float(refractive_index_at_omega(config.fiber.core, omega))
        result *= k_prime * omega / n ** 2
    return result


def h_center(config: ProcessConfig, centers: CenterProperties) -> float:
    """
    Return h evaluated with the frozen center properties of a design.
    """
    result = 1.0
    for k_prime, n, omega in zip(centers.k_prime[1:], centers.index[1:],
                                 config.emission_centers):
        result *= k_prime * omega / n ** 2
    return result


def _filter_weight(config: ProcessConfig, omegas: Sequence[np.ndarray]) -> Any:
    if config.filters is None:
        return 1.0
    weight = 1.0
    for f, omega in zip(config.filters, omegas):
        weight = weight * np.asarray(f.transmission(omega)) ** 2
    return weight


def _slice_integral(model: ProcessModel, nu_plus: float, axis: np.ndarray) -> float:
    """
    Trapezoid integral of h sinc^2(L dk / 2) |filters|^2 over the square axis x axis.
    """
    config = model.config
    weights = np.full(axis.size, axis[1] - axis[0])
    weights[0] = weights[-1] = weights[0] / 2
    rows = max(1, _CHUNK // axis.size)
    total = 0.0
    for start in range(0, axis.size, rows):
        a = axis[start:start + rows, None]
        nu_r, nu_s, nu_i = from_rotated(RotatedCoords(nu_plus, a, axis[None, :]))
        omegas = [center + nu for center, nu in zip(config.emission_centers,
                                                    (nu_r, nu_s, nu_i))]
        phase = config.length * model.delta_k(*omegas) / 2
        integrand = model.h(*omegas) * np.sinc(phase / pi) ** 2 * _filter_weight(config, omegas)
        total += float(weights[start:start + rows] @ integrand @ weights)
    return total


def _band_radius(model: ProcessModel) -> float:
    lo, hi = model.emission_band
    return min(min(w - lo, hi - w) for w in model.config.emission_centers)


def _phase(model: ProcessModel, nu_plus: float, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    config = model.config
    nu_r, nu_s, nu_i = from_rotated(RotatedCoords(nu_plus, a, b))
    omegas = [center + nu for center, nu in zip(config.emission_centers, (nu_r, nu_s, nu_i))]
    return config.length * model.delta_k(*omegas) / 2


def _phasematching_extent(model: ProcessModel, plus: np.ndarray, limit: float,
                          lobes: float) -> float:
    angles = np.linspace(0, 2 * pi, _SCAN_DIRECTIONS, endpoint=False)
    radii = np.geomspace(1e-4 * limit, limit, _SCAN_RADII)
    a = np.outer(np.cos(angles), radii)
    b = np.outer(np.sin(angles), radii)
    extent = 0.0
    for nu_plus in plus:
        inside = np.abs(_phase(model, float(nu_plus), a, b)) < lobes * pi
        for row in inside:
            hits = np.flatnonzero(row)
            if hits.size:
                extent = max(extent, radii[min(hits[-1] + 1, radii.size - 1)])
    return extent


def _plane_points(model: ProcessModel, plus: np.ndarray, extent: float,
                  numerics: NumericsConfig) -> int:
    scan = np.linspace(-extent, extent, _SCAN_POINTS)
    step = scan[1] - scan[0]
    gradient = 0.0
    for nu_plus in (plus[0], 0.0, plus[-1]):
        phase = _phase(model, float(nu_plus), scan[:, None], scan[None, :])
        grad_a, grad_b = np.gradient(phase, step)
        gradient = max(gradient, float(np.hypot(grad_a, grad_b).max()))

    if gradient == 0:
        points = numerics.flux_min_plane_points
    else:
        spacing = pi / (numerics.flux_samples_per_lobe * gradient)
        points = int(np.ceil(2 * extent / spacing)) + 1
    points = max(points, numerics.flux_min_plane_points) | 1
    ceiling = (numerics.flux_max_plane_points + 1) // 2 | 1
    if points > ceiling:
        logger.warning("Capping the initial flux grid at %d points per axis (needs %d)",
                       ceiling, points)
        points = ceiling
    return points


def _plane_extent(model: ProcessModel, plus: np.ndarray, numerics: NumericsConfig) -> float:
    band = _band_radius(model)
    plus_max = float(np.abs(plus).max())
    limit = np.sqrt(max(band ** 2 - plus_max ** 2, 0.0) / 2)
    if limit <= 0:
        raise DesignError("The nu_plus range exceeds the tabulated emission band; "
                          "reduce the pump bandwidth")

    extent = _phasematching_extent(model, plus, limit, numerics.flux_lobes)
    if model.config.filters is not None:
        filter_extent = _FILTER_EXTENT * max(f.sigma_f for f in model.config.filters)
        extent = filter_extent if extent == 0 else min(extent, filter_extent)
    if extent == 0:
        logger.warning("No phasematching within the emission band; the flux is negligible")
        extent = min(model.config.pump.sigma, limit)
    if extent > limit:
        logger.warning("Truncating the in-plane integration extent from %.6e to %.6e rad/s "
                       "at the tabulated band edge", extent, limit)
        extent = limit
    return extent


def _refine(evaluate: Any, points: int, numerics: NumericsConfig,
            what: str) -> Tuple[float, IntegrationDiagnostics]:
    previous = evaluate(points)
    refinements = 0
    while True:
        points = 2 * points - 1
        if points > numerics.flux_max_plane_points:
            raise NonConvergent(f"{what} did not converge to {numerics.flux_rel_tol:g} before "
                                f"reaching {numerics.flux_max_plane_points} points per axis; "
                                "raise flux_max_plane_points")
        current = evaluate(points)
        refinements += 1
        change = abs(current - previous) / abs(current) if current else 0.0
        logger.debug("%s: %d points per axis, relative change %.3g", what, points, change)
        if change < numerics.flux_rel_tol:
            return current, IntegrationDiagnostics(plane_points=points, refinements=refinements,
                                                   relative_change=change)
        previous = current


def flux_pulsed_numeric(config: ProcessConfig, *,
                        numerics: NumericsConfig = default_numerics) -> FluxResult:
    """
    Integrate the pulsed-pump emission rate numerically.

    N = 2^(5/2) 9 hbar c^3 n_p^3 / (pi^(5/2) omega_p0^2) L^2 gamma^2 p / sigma
        x integral of h |f|^2 over the three emitted frequencies,

    with f the prefactor-free joint spectral amplitude (times the filter amplitudes
    when filters are configured). The in-plane grid is doubled until the rate
    changes by less than `numerics.flux_rel_tol`.

    :param config: The source design.
    :param numerics: Quadrature settings.
    :return: The `FluxResult`.
    :raises NonConvergent: If the grid limit is reached first.
    :raises ModeNotGuided: If a mode is not guided inside the integration band.
    """
    sigma = config.pump.sigma
    plus = np.linspace(-_PLUS_EXTENT * sigma, _PLUS_EXTENT * sigma, numerics.flux_plus_points)
    model = ProcessModel(config, np.sqrt(3) * float(np.abs(plus).max()), numerics=numerics)
    extent = _plane_extent(model, plus, numerics)
    points = _plane_points(model, plus, extent, numerics)
    envelope = np.exp(-6 * plus ** 2 / sigma ** 2)

    def evaluate(n: int) -> float:
        axis = np.linspace(-extent, extent, n)
        slices = np.array([_slice_integral(model, float(v), axis) for v in plus])
        return float(trapezoid(envelope * slices, plus))

    integral, diagnostics = _refine(evaluate, points, numerics, "Pulsed flux integral")
    centers = model.centers
    n_p = centers.index[0]
    prefactor = (2 ** 2.5 * 9 * hbar * c ** 3 * n_p ** 3 / (pi ** 2.5 * config.pump.omega_p0 ** 2)
                 * config.length ** 2 * centers.gamma ** 2 * config.average_power / sigma)
    diagnostics.update(plus_points=plus.size, extent=extent)
    n = prefactor * integral
    logger.info("Pulsed numeric flux %.6g triplets/s (%d x %d in-plane points)",
                n, diagnostics["plane_points"], diagnostics["plane_points"])
    return _result(config, n, FluxMethod.NUMERIC, diagnostics)


def flux_cw(config: ProcessConfig, *,
            numerics: NumericsConfig = default_numerics) -> FluxResult:
    """
    Integrate the monochromatic-pump emission rate at omega_p = omega_p0.

    The double integral over (omega_r, omega_s) equals 1/sqrt(3) times the integral
    over the nu_plus = 0 plane. The nonlinear phase uses the average power.

    :raises NonConvergent: If the grid limit is reached first.
    """
    plus = np.zeros(1)
    model = ProcessModel(config, 0.0, peak_power=config.average_power, numerics=numerics)
    extent = _plane_extent(model, plus, numerics)
    points = _plane_points(model, plus, extent, numerics)

    def evaluate(n: int) -> float:
        return _slice_integral(model, 0.0, np.linspace(-extent, extent, n)) / np.sqrt(3)

    integral, diagnostics = _refine(evaluate, points, numerics, "CW flux integral")
    centers = model.centers
    n_p = centers.index[0]
    prefactor = (4 * 9 * hbar * c ** 3 * n_p ** 3 / (pi ** 2 * config.pump.omega_p0 ** 2)
                 * centers.gamma ** 2 * config.length ** 2 * config.average_power)
    diagnostics.update(plus_points=1, extent=extent)
    return _result(config, prefactor * integral, FluxMethod.CW, diagnostics)


def eta_cw(config: ProcessConfig, *, numerics: NumericsConfig = default_numerics) -> float:
    """
    Return the monochromatic-pump conversion efficiency.
    """
    return flux_cw(config, numerics=numerics).eta


def tau_coefficients(config: ProcessConfig, centers: Optional[CenterProperties] = None, *,
                     numerics: NumericsConfig = default_numerics) -> TauCoefficients:
    if centers is None:
        centers = center_properties(config, numerics)
    k_p, k_r, k_s, k_i = centers.k_prime
    return TauCoefficients(tau_r=config.length * (k_p - k_r), tau_s=config.length * (k_p - k_s),
                           tau_i=config.length * (k_p - k_i))


def _slowness_spread(centers: CenterProperties) -> float:
    _, k_r, k_s, k_i = centers.k_prime
    spread = k_r ** 2 + k_s ** 2 + k_i ** 2 - k_r * k_s - k_r * k_i - k_s * k_i
    if spread <= 1e-12 * (k_r ** 2 + k_s ** 2 + k_i ** 2):
        raise DegenerateDivergence("The characteristic length diverges: the emitted modes "
                                   "share one group slowness (frequency-degenerate design)")
    return spread


def characteristic_length(config: ProcessConfig, sigma_f: Optional[float] = None,
                          centers: Optional[CenterProperties] = None, *,
                          numerics: NumericsConfig = default_numerics) -> float:
    """
    Return L0 = sqrt(48) / sigma_f / sqrt(sum k'^2 - sum_pairs k' k') in meters.

    :param config: The source design.
    :param sigma_f: Filter bandwidth in rad/s; defaults to the common filter bandwidth.
    :param centers: Precomputed center properties.
    :raises DesignError: If no filter bandwidth is available.
    :raises DegenerateDivergence: If the emitted group slownesses coincide.
    """
    if sigma_f is None:
        sigma_f = _filter_bandwidth(config)
    if centers is None:
        centers = center_properties(config, numerics)
    return np.sqrt(48) / sigma_f / np.sqrt(_slowness_spread(centers))


def phi_parameter(tau: TauCoefficients, sigma: float, sigma_f: float) -> float:
    """
    Return the walk-off parameter Phi of the closed-form flux.

    :param tau: Walk-off times.
    :param sigma: Pump bandwidth in rad/s.
    :param sigma_f: Common filter bandwidth in rad/s.
    """
    t_r, t_s, t_i = tau.as_tuple()
    squares = t_r ** 2 + t_s ** 2 + t_i ** 2
    products = t_r * t_s + t_r * t_i + t_s * t_i
    return (sigma_f ** 2 / (32 * (sigma ** 2 + 3 * sigma_f ** 2))
            * ((sigma ** 2 + 2 * sigma_f ** 2) * squares - 2 * sigma_f ** 2 * products))


def braced_factor(phi: float) -> float:
    """
    Return {2 sqrt(pi Phi) erf(2 sqrt(Phi)) + exp(-4 Phi) - 1} / Phi.

    The factor tends to 4 as Phi -> 0 and to 2 sqrt(pi / Phi) for large Phi.
    """
    if phi < 0:
        raise DesignError(f"Phi must be non-negative, got {phi}")
    if phi < _PHI_SERIES:
        return 4.0 - 8.0 * phi / 3.0
    root = np.sqrt(phi)
    return float((2 * np.sqrt(pi) * root * erf(2 * root) + np.exp(-4 * phi) - 1) / phi)


def _filter_bandwidth(config: ProcessConfig) -> float:
    sigma_f = config.common_filter_bandwidth
    if sigma_f is None:
        raise DesignError("The closed-form flux needs Gaussian filters of one common "
                          "bandwidth on all three modes; set emission.filter_THz")
    return sigma_f


def _check_closed_form(config: ProcessConfig) -> float:
    if config.is_degenerate:
        raise DegenerateDesign("The closed-form flux only holds for frequency non-degenerate "
                               "emission; use the numeric method")
    return _filter_bandwidth(config)


def _prefactor(config: ProcessConfig, centers: CenterProperties) -> float:
    n_p = centers.index[0]
    return (hbar * c ** 3 * n_p ** 3 / config.pump.omega_p0 ** 2 * centers.gamma ** 2
            * config.average_power * h_center(config, centers))


def flux_analytic(config: ProcessConfig, centers: Optional[CenterProperties] = None, *,
                  numerics: NumericsConfig = default_numerics) -> FluxResult:
    """
    Return the closed-form rate for Gaussian-filtered non-degenerate emission.

    h is frozen at the emission centers and the phasemismatch is linearized with the
    walk-off times tau_mu.

    :param config: The source design (filters required).
    :param centers: Precomputed center properties.
    :raises DegenerateDesign: If the emission is frequency degenerate.
    :raises DesignError: If the modes are not filtered with one common bandwidth.
    """
    sigma_f = _check_closed_form(config)
    if centers is None:
        centers = center_properties(config, numerics)
    sigma = config.pump.sigma
    phi = phi_parameter(tau_coefficients(config, centers), sigma, sigma_f)
    n = (9 / (2 * pi) * _prefactor(config, centers) * config.length ** 2 * sigma_f ** 3
         / np.sqrt(sigma ** 2 + 3 * sigma_f ** 2) * braced_factor(phi))
    diagnostics = IntegrationDiagnostics(phi=phi)
    try:
        diagnostics["characteristic_length"] = characteristic_length(config, sigma_f, centers)
    except DegenerateDivergence:
        pass
    return _result(config, float(n), FluxMethod.ANALYTIC, diagnostics)


def flux_asymptotic(config: ProcessConfig, regime: Regime,
                    centers: Optional[CenterProperties] = None, *,
                    numerics: NumericsConfig = default_numerics) -> FluxResult:
    """
    Return the long- or short-fiber limit of the closed-form rate.

    The long limit is linear in L and sigma_f, the short limit quadratic in both. A
    `RegimeMismatch` warning is emitted when L lies on the wrong side of, or within
    `Defaults.regime_margin` of, the crossover length sqrt(100) L0.

    :raises DegenerateDesign: If the emission is frequency degenerate.
    :raises DegenerateDivergence: If the emitted group slownesses coincide.
    """
    sigma_f = _check_closed_form(config)
    if centers is None:
        centers = center_properties(config, numerics)
    l0 = characteristic_length(config, sigma_f, centers)
    crossover = np.sqrt(Defaults.regime_threshold) * l0
    ratio = config.length / crossover
    margin = Defaults.regime_margin
    wrong_side = ratio < 1 if regime == Regime.LONG else ratio > 1
    if wrong_side or abs(ratio - 1) <= margin:
        warnings.warn(RegimeMismatch(
            f"L = {config.length:.4g} m is {ratio:.3g} times the crossover length "
            f"{crossover:.4g} m; the {regime} asymptote may be inaccurate"
        ), stacklevel=2)

    prefactor = _prefactor(config, centers)
    if regime == Regime.LONG:
        spread = _slowness_spread(centers)
        n = 36 / np.sqrt(pi) * prefactor * config.length * sigma_f / np.sqrt(spread)
    else:
        n = 18 / (np.sqrt(3) * pi) * prefactor * config.length ** 2 * sigma_f ** 2
    diagnostics = IntegrationDiagnostics(characteristic_length=l0, regime=str(regime))
    return _result(config, float(n), FluxMethod.ASYMPTOTIC, diagnostics)


@dataclass(frozen=True)
class SweepRow:
    value: float
    """Swept parameter value in SI units."""

    results: Tuple[FluxResult, ...]


def _swept(config: ProcessConfig, parameter: SweepParameter, value: float) -> ProcessConfig:
    if parameter == SweepParameter.SIGMA:
        return config.with_sigma(value)
    if parameter == SweepParameter.LENGTH:
        return config.with_changes(length=value)
    return config.with_changes(average_power=value)


def flux_by_method(config: ProcessConfig, method: FluxMethod, regime: Regime = Regime.LONG, *,
                   numerics: NumericsConfig = default_numerics) -> FluxResult:
    """
    Dispatch to the flux function of `method`; `regime` only affects the asymptotic one.
    """
    if method == FluxMethod.NUMERIC:
        return flux_pulsed_numeric(config, numerics=numerics)
    if method == FluxMethod.CW:
        return flux_cw(config, numerics=numerics)
    if method == FluxMethod.ANALYTIC:
        return flux_analytic(config, numerics=numerics)
    return flux_asymptotic(config, regime, numerics=numerics)


def sweep(config: ProcessConfig, parameter: SweepParameter, values: Sequence[float],
          methods: Optional[Sequence[FluxMethod]] = None, *, regime: Regime = Regime.LONG,
          numerics: NumericsConfig = default_numerics) -> List[SweepRow]:
    """
    Evaluate the emitted flux along one experimental parameter.

    Sweeping the pump bandwidth keeps the average power, and with the repetition rate
    the energy per pulse, constant.

    :param config: The base design.
    :param parameter: The swept parameter.
    :param values: Parameter values in SI units (rad/s, m or W).
    :param methods: Methods evaluated at every value; numeric, plus analytic for
        filtered non-degenerate designs, by default.
    :param regime: Regime used by the asymptotic method.
    :param numerics: Quadrature settings and worker threads.
    :return: One row per value, in input order.
    """
    chosen = list(methods) if methods is not None else [FluxMethod.NUMERIC]
    if methods is None and not config.is_degenerate and config.common_filter_bandwidth:
        chosen.append(FluxMethod.ANALYTIC)

    def row(value: float) -> SweepRow:
        swept = _swept(config, parameter, float(value))
        results = tuple(flux_by_method(swept, m, regime, numerics=numerics) for m in chosen)
        logger.info("Sweep %s=%.6g: %s", parameter, value,
                    ", ".join(f"{r.method}={r.n:.6g}/s" for r in results))
        return SweepRow(value=float(value), results=results)

    return ordered_map(row, values, numerics.threads)


def write_sweep_csv(rows: Sequence[SweepRow], stream: TextIO) -> None:
    """
    Write sweep rows as (param_value, N_triplets_per_s, eta, method), one line per method.
    """
    lines = ((row.value, r.n, r.eta, str(r.method)) for row in rows for r in row.results)
    write_rows(stream, ("param_value", "N_triplets_per_s", "eta", "method"), lines)


def design_report(config: ProcessConfig, *,
                  numerics: NumericsConfig = default_numerics) -> Dict[str, Any]:
    """
    Summarize a design: geometry, pump, nonlinear coefficients, walk-off and L0, Phi.

    Quantities that do not apply (L0 and Phi of degenerate or unfiltered designs) are None.
    """
    centers = center_properties(config, numerics)
    coefficients = centers.coefficients
    tau = tau_coefficients(config, centers)

    sigma_f = config.common_filter_bandwidth
    l0: Optional[float] = None
    phi: Optional[float] = None
    if sigma_f is not None:
        phi = phi_parameter(tau, config.pump.sigma, sigma_f)
        try:
            l0 = characteristic_length(config, sigma_f, centers)
        except DegenerateDivergence:
            l0 = None

    return {
        "radius_um": config.fiber.radius * 1e6,
        "length_m": config.length,
        "lambda_p_um": omega_to_wavelength(config.pump.omega_p0) * 1e6,
        "lambda_r_um": omega_to_wavelength(config.omega_r0) * 1e6,
        "lambda_s_um": omega_to_wavelength(config.omega_s0) * 1e6,
        "lambda_i_um": omega_to_wavelength(config.omega_i0) * 1e6,
        "sigma_rad_s": config.pump.sigma,
        "sigma_f_rad_s": sigma_f,
        "average_power_W": config.average_power,
        "repetition_rate_Hz": config.repetition_rate,
        "peak_power_W": config.peak_power,
        "pump_photons_per_s": pump_photon_rate(config.average_power, config.pump.omega_p0),
        "degenerate": config.is_degenerate,
        "gamma_per_W_m": coefficients.gamma,
        "gamma_p_per_W_m": coefficients.gamma_p,
        "gamma_pmu_per_W_m": [coefficients.gamma_pr, coefficients.gamma_ps,
                              coefficients.gamma_pi],
        "a_eff_um2": coefficients.a_eff * 1e12,
        "a_eff_p_um2": coefficients.a_eff_p * 1e12,
        "a_eff_pmu_um2": [a * 1e12 for a in coefficients.a_eff_pmu],
        "phi_nl_rad_m": nonlinear_phase(coefficients, config.peak_power),
        "nonlinear_phase_enabled": config.nonlinear_phase,
        "kprime_s_m": list(centers.k_prime),
        "index": list(centers.index),
        "h_center": h_center(config, centers),
        "tau_s": list(tau.as_tuple()),
        "characteristic_length_m": l0,
        "phi": phi,
    }
