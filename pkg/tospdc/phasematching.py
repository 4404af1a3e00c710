"""
Phasemismatch of the HE12 -> 3 x HE11 process and the phasematching design maps.

All maps are traced with linear phasematching (no nonlinear phase).
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, TextIO, Tuple

import numpy as np
from scipy.optimize import brentq

from ._csv import write_rows
from ._defaults import Defaults
from ._errors import (
    DegenerateOverlap,
    DesignError,
    InputError,
    ModeNotGuided,
    NoSignChange,
    NumericalError,
)
from ._mode_id import ModeId
from ._numerics import NumericsConfig, default_numerics
from ._utils import ordered_map, scan_root
from .dispersion import (
    FUSED_SILICA,
    SellmeierModel,
    omega_to_wavelength,
    refractive_index_at_omega,
    wavelength_to_omega,
)
from .fiber_modes import FiberSpec, ProfileGrid, mode_profile, propagation_constant
from .nonlinearity import (
    Chi3,
    NonlinearCoefficients,
    compute_coefficients,
    effective_area_tospdc,
    gamma_tospdc,
    nonlinear_phase,
)

__all__ = ("ProcessFrequencies", "PhasematchPoint", "DegeneratePoint", "DegenerateCurve",
           "GammaMap", "delta_k", "phasematch_mismatch", "find_phasematching_radius",
           "degenerate_wavelength_curve", "emission_contour_vs_pump",
           "emission_contour_vs_radius", "find_vertex_pump", "find_vertex_radius",
           "resolve_emission_pair", "gamma_map", "write_degenerate_curve_csv",
           "write_contour_csv", "write_gamma_map_csv",)

logger = logging.getLogger(__name__)

# Allowed radius window for phasematching searches (m)
_RADIUS_LIMITS = (0.2e-6, 1.0e-6)
# Wavelength window scanned for degenerate phasematching (m)
_DEGENERATE_WAVELENGTHS = (0.7e-6, 3.5e-6)


@dataclass(frozen=True)
class ProcessFrequencies:
    """
    Pump and emitted angular frequencies (rad/s) satisfying energy conservation.
    """

    omega_p: float
    omega_r: float
    omega_s: float
    omega_i: float

    def __post_init__(self) -> None:
        values = (self.omega_p, self.omega_r, self.omega_s, self.omega_i)
        if not all(v > 0 for v in values):
            raise DesignError(f"Frequencies must be positive, got {values}")
        total = self.omega_r + self.omega_s + self.omega_i
        if abs(self.omega_p - total) > 1e-12 * self.omega_p:
            raise DesignError(f"Energy is not conserved: omega_p={self.omega_p:.15e} but "
                              f"omega_r+omega_s+omega_i={total:.15e} rad/s")

    @classmethod
    def from_detuning(cls, omega_p: float, omega_i: float,
                      delta: float = 0.0) -> "ProcessFrequencies":
        """
        Build the frequencies with omega_r,s = (omega_p - omega_i)/2 +/- delta.
        """
        center = (omega_p - omega_i) / 2
        return cls(omega_p=omega_p, omega_r=center + delta, omega_s=center - delta,
                   omega_i=omega_i)

    @classmethod
    def degenerate(cls, omega: float) -> "ProcessFrequencies":
        return cls(omega_p=3 * omega, omega_r=omega, omega_s=omega, omega_i=omega)

    @property
    def delta(self) -> float:
        return (self.omega_r - self.omega_s) / 2

    @property
    def emitted(self) -> Tuple[float, float, float]:
        return self.omega_r, self.omega_s, self.omega_i


@dataclass(frozen=True)
class PhasematchPoint:
    radius: float
    omega_p: float
    delta: float
    omega_i: float
    residual: float

    @property
    def frequencies(self) -> ProcessFrequencies:
        return ProcessFrequencies.from_detuning(self.omega_p, self.omega_i, self.delta)


@dataclass(frozen=True)
class DegeneratePoint:
    radius: float
    wavelength: float
    gamma: float


@dataclass(frozen=True)
class DegenerateCurve:
    points: Tuple[DegeneratePoint, ...]
    skipped: Tuple[float, ...] = ()
    """Radii (m) without degenerate phasematching inside the scanned wavelengths."""


def delta_k(fiber: FiberSpec, freqs: ProcessFrequencies, peak_power: float = 0.0, *,
            coefficients: Optional[NonlinearCoefficients] = None, chi3: Chi3 = Chi3(),
            numerics: NumericsConfig = default_numerics) -> float:
    """
    Return the signed phasemismatch k_p - k_r - k_s - k_i + Phi_NL in rad/m.

    The pump travels in HE12 and the three emitted photons in HE11.

    :param fiber: The fiber.
    :param freqs: The process frequencies.
    :param peak_power: Pump peak power in W entering the nonlinear phase.
    :param coefficients: Nonlinear coefficients for the nonlinear phase; computed at
        `freqs` from the mode profiles when omitted and `peak_power` is positive.
    :param chi3: Susceptibility used when the coefficients are computed here.
    :param numerics: Solver settings.
    :raises ModeNotGuided: If a mode is not guided.
    :raises OutOfValidityRange: If a frequency is outside the material validity.
    """
    k_p = propagation_constant(fiber, ModeId.HE12, freqs.omega_p, numerics=numerics)
    mismatch = k_p - sum(propagation_constant(fiber, ModeId.HE11, w, numerics=numerics)
                         for w in freqs.emitted)
    if peak_power:
        if coefficients is None:
            n_p, n_r, n_s, n_i = (float(refractive_index_at_omega(fiber.core, w))
                                  for w in (freqs.omega_p,) + freqs.emitted)
            coefficients = compute_coefficients(
                fiber, (freqs.omega_p, freqs.omega_r, freqs.omega_s, freqs.omega_i),
                (n_p, n_r, n_s, n_i), chi3, numerics=numerics,
            )
        mismatch += nonlinear_phase(coefficients, peak_power)
    return mismatch


def phasematch_mismatch(fiber: FiberSpec, wavelength: float, *,
                        numerics: NumericsConfig = default_numerics) -> float:
    """
    Return the frequency-degenerate mismatch k_HE12(3 omega) - 3 k_HE11(omega) in rad/m.

    :param fiber: The fiber.
    :param wavelength: Degenerate emission wavelength in meters.
    :raises ModeNotGuided: If HE12 is not guided at the pump frequency.
    """
    omega = float(wavelength_to_omega(wavelength))
    return delta_k(fiber, ProcessFrequencies.degenerate(omega), numerics=numerics)


def _mismatch_or_nan(fiber: FiberSpec, freqs: ProcessFrequencies,
                     numerics: NumericsConfig) -> float:
    try:
        return delta_k(fiber, freqs, numerics=numerics)
    except ModeNotGuided:
        return float("nan")


def _check_bracket(bracket: Tuple[float, float]) -> None:
    lo, hi = bracket
    lo_limit, hi_limit = _RADIUS_LIMITS
    if not lo_limit <= lo < hi <= hi_limit:
        raise DesignError(f"Radius bracket [{lo * 1e6:.6g}, {hi * 1e6:.6g}] um must be "
                          f"increasing and inside [{lo_limit * 1e6:g}, {hi_limit * 1e6:g}] um")


def find_vertex_radius(omega_p: float, omega_i: float,
                       bracket: Tuple[float, float] = Defaults.radius_bracket, *,
                       core: SellmeierModel = FUSED_SILICA,
                       cladding_index: float = Defaults.cladding_index,
                       numerics: NumericsConfig = default_numerics) -> float:
    """
    Find the radius at which the emission contour has its vertex (delta = 0).

    :param omega_p: Pump frequency in rad/s.
    :param omega_i: Idler frequency in rad/s.
    :param bracket: Radius interval (m) inside [0.2, 1.0] um.
    :param core: Core material.
    :param cladding_index: Cladding index.
    :param numerics: Scan density and tolerances.
    :return: The radius in meters.
    :raises DesignError: If the bracket is invalid.
    :raises NoSignChange: If the mismatch does not change sign inside the bracket.
    """
    _check_bracket(bracket)
    freqs = ProcessFrequencies.from_detuning(omega_p, omega_i)

    def mismatch(radius: float) -> float:
        fiber = FiberSpec(radius=radius, core=core, cladding_index=cladding_index)
        return _mismatch_or_nan(fiber, freqs, numerics)

    radius = scan_root(mismatch, bracket[0], bracket[1], numerics.radius_scan_points,
                       xtol=1e-14, what="phasemismatch over radius")
    residual = abs(mismatch(radius))
    if not residual < numerics.phasematch_tolerance:
        raise NumericalError(f"Phasematching radius {radius * 1e6:.6g} um leaves a residual "
                             f"of {residual:.3g} rad/m; refine root_scan_points")
    logger.info("Vertex radius %.6f um (residual %.3g rad/m)", radius * 1e6, residual)
    return radius


def find_phasematching_radius(wavelength: float,
                              bracket: Tuple[float, float] = Defaults.radius_bracket, *,
                              core: SellmeierModel = FUSED_SILICA,
                              cladding_index: float = Defaults.cladding_index,
                              numerics: NumericsConfig = default_numerics) -> float:
    """
    Find the core radius phasematching frequency-degenerate emission at `wavelength`.

    The condition k_HE12(3 omega) = 3 k_HE11(omega) is bracketed on a uniform radius
    scan (radii where HE12 is not guided are skipped) and polished with Brent's method.

    :param wavelength: Degenerate emission wavelength in meters.
    :param bracket: Radius interval (m) inside [0.2, 1.0] um.
    :return: The radius in meters.
    :raises NoSignChange: If the bracket does not straddle a root.
    """
    omega = float(wavelength_to_omega(wavelength))
    return find_vertex_radius(3 * omega, omega, bracket, core=core,
                              cladding_index=cladding_index, numerics=numerics)


def _degenerate_point(fiber: FiberSpec, numerics: NumericsConfig,
                      chi3: Chi3) -> Optional[DegeneratePoint]:
    def mismatch(wavelength: float) -> float:
        return _mismatch_or_nan(fiber, ProcessFrequencies.degenerate(
            float(wavelength_to_omega(wavelength))), numerics)

    try:
        wavelength = scan_root(mismatch, *_DEGENERATE_WAVELENGTHS,
                               2 * numerics.radius_scan_points, xtol=1e-14,
                               what="degenerate phasemismatch over wavelength")
    except NoSignChange:
        return None

    omega = float(wavelength_to_omega(wavelength))
    grid = ProfileGrid.for_fiber(fiber, numerics.map_profile_points, numerics=numerics)
    n_p = float(refractive_index_at_omega(fiber.core, 3 * omega))
    n = float(refractive_index_at_omega(fiber.core, omega))
    coefficients = compute_coefficients(fiber, (3 * omega, omega, omega, omega),
                                        (n_p, n, n, n), chi3, grid=grid, numerics=numerics)
    return DegeneratePoint(radius=fiber.radius, wavelength=wavelength,
                           gamma=coefficients.gamma)


def degenerate_wavelength_curve(radii: Sequence[float], *,
                                core: SellmeierModel = FUSED_SILICA,
                                cladding_index: float = Defaults.cladding_index,
                                chi3: Chi3 = Chi3(),
                                numerics: NumericsConfig = default_numerics) -> DegenerateCurve:
    """
    Trace the degenerate phasematched wavelength and gamma against the core radius.

    :param radii: Core radii in meters.
    :param core: Core material.
    :param cladding_index: Cladding index.
    :param chi3: Susceptibility entering gamma.
    :param numerics: Scan density, map profile grid and worker threads.
    :return: The curve; radii without phasematching are listed in `skipped`.
    """
    fibers = [FiberSpec(radius=r, core=core, cladding_index=cladding_index) for r in radii]
    results = ordered_map(lambda f: _degenerate_point(f, numerics, chi3), fibers,
                          numerics.threads)

    points = tuple(p for p in results if p is not None)
    skipped = tuple(f.radius for f, p in zip(fibers, results) if p is None)
    if skipped:
        logger.warning("No degenerate phasematching for %d radius value(s): %s", len(skipped),
                       ", ".join(f"{r * 1e6:.4g} um" for r in skipped))
    return DegenerateCurve(points=points, skipped=skipped)


def _delta_limit(fiber: FiberSpec, omega_p: float, omega_i: float) -> float:
    lo, hi = fiber.core.validity
    omega_lo = float(wavelength_to_omega(hi))
    omega_hi = float(wavelength_to_omega(lo))
    center = (omega_p - omega_i) / 2
    return (1 - 1e-9) * min(center - omega_lo, omega_hi - center)


def _solve_detunings(fiber: FiberSpec, omega_p: float, omega_i: float,
                     numerics: NumericsConfig) -> List[PhasematchPoint]:
    try:
        propagation_constant(fiber, ModeId.HE12, omega_p, numerics=numerics)
    except ModeNotGuided:
        logger.debug("HE12 not guided at r=%.6g um, omega_p=%.6e rad/s",
                     fiber.radius * 1e6, omega_p)
        return []

    def mismatch(delta: float) -> float:
        return delta_k(fiber, ProcessFrequencies.from_detuning(omega_p, omega_i, delta),
                       numerics=numerics)

    def point(delta: float, residual: float) -> PhasematchPoint:
        return PhasematchPoint(radius=fiber.radius, omega_p=omega_p, delta=delta,
                               omega_i=omega_i, residual=residual)

    at_vertex = mismatch(0.0)
    if abs(at_vertex) < numerics.phasematch_tolerance:
        return [point(0.0, abs(at_vertex))]

    limit = _delta_limit(fiber, omega_p, omega_i)
    if limit <= 0:
        return []
    # The mismatch is even in delta: scan delta >= 0 and mirror the roots
    grid = np.linspace(0.0, limit, numerics.contour_scan_points)
    values = np.array([at_vertex] + [mismatch(d) for d in grid[1:]])
    points: List[PhasematchPoint] = []
    for a in np.flatnonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0):
        delta = float(brentq(mismatch, grid[a], grid[a + 1], xtol=1e-15 * omega_i))
        residual = abs(mismatch(delta))
        if residual > numerics.phasematch_tolerance:
            logger.warning("Dropping contour point delta=%.6e rad/s with residual %.3g rad/m",
                           delta, residual)
            continue
        points.extend([point(-delta, residual), point(delta, residual)])
    return sorted(points, key=lambda p: p.delta)


def emission_contour_vs_pump(fiber: FiberSpec, omega_i: float, omega_p_values: Sequence[float],
                             *, numerics: NumericsConfig = default_numerics
                             ) -> List[PhasematchPoint]:
    """
    Solve for the phasematched detunings at each pump frequency with the idler fixed.

    Each pump frequency yields no point (no phasematching), the vertex (delta = 0,
    reported once) or a +/- delta pair.

    :param fiber: The fiber.
    :param omega_i: Fixed idler frequency in rad/s.
    :param omega_p_values: Pump frequencies in rad/s.
    :param numerics: Scan density, tolerance and worker threads.
    :return: Phasematch points ordered by pump frequency, then detuning.
    """
    rows = ordered_map(lambda w: _solve_detunings(fiber, float(w), omega_i, numerics),
                       omega_p_values, numerics.threads)
    return [p for row in rows for p in row]


def emission_contour_vs_radius(omega_p: float, omega_i: float, radii: Sequence[float], *,
                               core: SellmeierModel = FUSED_SILICA,
                               cladding_index: float = Defaults.cladding_index,
                               numerics: NumericsConfig = default_numerics
                               ) -> List[PhasematchPoint]:
    """
    Solve for the phasematched detunings at each radius with pump and idler fixed.

    :return: Phasematch points ordered by radius, then detuning.
    """
    fibers = [FiberSpec(radius=r, core=core, cladding_index=cladding_index) for r in radii]
    rows = ordered_map(lambda f: _solve_detunings(f, omega_p, omega_i, numerics),
                       fibers, numerics.threads)
    return [p for row in rows for p in row]


def find_vertex_pump(fiber: FiberSpec, omega_i: float,
                     bracket: Optional[Tuple[float, float]] = None, *,
                     numerics: NumericsConfig = default_numerics) -> float:
    """
    Find the pump frequency at which the emission contour has its vertex.

    :param fiber: The fiber.
    :param omega_i: Fixed idler frequency in rad/s.
    :param bracket: Pump frequency interval in rad/s; defaults to 2.9-3.1 omega_i.
    :return: The pump frequency in rad/s.
    :raises NoSignChange: If the vertex mismatch does not change sign in the bracket.
    """
    lo, hi = bracket if bracket is not None else (2.9 * omega_i, 3.1 * omega_i)

    def mismatch(omega_p: float) -> float:
        return _mismatch_or_nan(fiber, ProcessFrequencies.from_detuning(omega_p, omega_i),
                                numerics)

    return scan_root(mismatch, lo, hi, numerics.radius_scan_points, xtol=1e-12 * omega_i,
                     what="vertex phasemismatch over pump frequency")


def resolve_emission_pair(fiber: FiberSpec, omega_p: float, omega_i: float, *,
                          numerics: NumericsConfig = default_numerics) -> Tuple[float, float]:
    """
    Return the phasematched (omega_r, omega_s) for fixed pump and idler, omega_r >= omega_s.

    :raises NoSignChange: If the pump and idler admit no phasematched pair.
    """
    points = _solve_detunings(fiber, omega_p, omega_i, numerics)
    if not points:
        raise NoSignChange(
            f"No phasematched emission at r={fiber.radius * 1e6:.6g} um for pump "
            f"{omega_to_wavelength(omega_p) * 1e6:.6g} um and idler "
            f"{omega_to_wavelength(omega_i) * 1e6:.6g} um; raise the pump frequency"
        )
    freqs = points[-1].frequencies
    return freqs.omega_r, freqs.omega_s


@dataclass(frozen=True)
class GammaMap:
    """
    Gamma and linear phasemismatch over a (pump frequency, detuning) grid.
    """

    radius: float
    omega_i: float
    omega_p: np.ndarray = field(repr=False, compare=False)
    delta: np.ndarray = field(repr=False, compare=False)
    gamma: np.ndarray = field(repr=False, compare=False)
    """Gamma in 1/(W m) indexed [i_omega_p, i_delta]; NaN where undefined."""
    mismatch: np.ndarray = field(repr=False, compare=False)
    contour: Tuple[PhasematchPoint, ...] = field(repr=False, compare=False, default=())

    @property
    def phasematched(self) -> np.ndarray:
        """
        Cells across which the mismatch changes sign along the detuning axis.
        """
        sign = np.sign(self.mismatch)
        crossing = np.zeros(self.mismatch.shape, dtype=bool)
        change = sign[:, :-1] * sign[:, 1:] < 0
        crossing[:, :-1] |= change
        crossing[:, 1:] |= change
        return crossing


def _gamma_row(fiber: FiberSpec, omega_p: float, omega_i: float, deltas: np.ndarray,
               chi3: Chi3, numerics: NumericsConfig) -> Tuple[np.ndarray, np.ndarray]:
    gammas = np.full(deltas.shape, np.nan)
    mismatches = np.full(deltas.shape, np.nan)
    grid = ProfileGrid.for_fiber(fiber, numerics.map_profile_points, numerics=numerics)
    try:
        a_p = mode_profile(fiber, ModeId.HE12, omega_p, grid, numerics=numerics)
        a_i = mode_profile(fiber, ModeId.HE11, omega_i, grid, numerics=numerics)
        n_p = float(refractive_index_at_omega(fiber.core, omega_p))
    except (ModeNotGuided, DegenerateOverlap, InputError):
        return gammas, mismatches

    for j, delta in enumerate(deltas):
        try:
            freqs = ProcessFrequencies.from_detuning(omega_p, omega_i, float(delta))
            a_r = mode_profile(fiber, ModeId.HE11, freqs.omega_r, grid, numerics=numerics)
            a_s = mode_profile(fiber, ModeId.HE11, freqs.omega_s, grid, numerics=numerics)
            mismatches[j] = delta_k(fiber, freqs, numerics=numerics)
            gammas[j] = gamma_tospdc(chi3, omega_p, n_p, effective_area_tospdc(a_p, a_r, a_s, a_i))
        except (ModeNotGuided, DegenerateOverlap, InputError):
            continue
    return gammas, mismatches


def gamma_map(fiber: FiberSpec, omega_i: float, omega_p_values: Sequence[float],
              delta_values: Sequence[float], *, chi3: Chi3 = Chi3(),
              numerics: NumericsConfig = default_numerics) -> GammaMap:
    """
    Evaluate gamma over a (pump frequency, detuning) grid regardless of phasematching.

    Cells outside the material validity or without a guided pump are NaN. The
    phasematching contour over the same pump frequencies is attached.

    :param fiber: The fiber.
    :param omega_i: Fixed idler frequency in rad/s.
    :param omega_p_values: Pump frequencies in rad/s.
    :param delta_values: Detunings in rad/s.
    :param chi3: Susceptibility entering gamma.
    :param numerics: Map profile grid, scan density and worker threads.
    """
    omega_p = np.asarray(omega_p_values, dtype=float)
    deltas = np.asarray(delta_values, dtype=float)
    rows = ordered_map(lambda w: _gamma_row(fiber, float(w), omega_i, deltas, chi3, numerics),
                       omega_p, numerics.threads)
    gammas = np.array([row[0] for row in rows]).reshape(omega_p.size, deltas.size)
    mismatches = np.array([row[1] for row in rows]).reshape(omega_p.size, deltas.size)
    masked = int(np.isnan(gammas).sum())
    if masked:
        logger.info("Gamma map: %d of %d cells masked", masked, gammas.size)

    contour = emission_contour_vs_pump(fiber, omega_i, omega_p, numerics=numerics)
    return GammaMap(radius=fiber.radius, omega_i=omega_i, omega_p=omega_p, delta=deltas,
                    gamma=gammas, mismatch=mismatches, contour=tuple(contour))


def write_degenerate_curve_csv(curve: DegenerateCurve, stream: TextIO) -> None:
    rows = ((p.radius * 1e6, p.wavelength * 1e6, p.gamma * 1e3) for p in curve.points)
    write_rows(stream, ("r_um", "lambda_deg_um", "gamma_W_km"), rows)


def write_contour_csv(points: Sequence[PhasematchPoint], stream: TextIO) -> None:
    rows = ((p.omega_p, p.delta, p.radius * 1e6) for p in points)
    write_rows(stream, ("omega_p_rad_s", "delta_rad_s", "radius_um"), rows)


def write_gamma_map_csv(gmap: GammaMap, stream: TextIO) -> None:
    flags = gmap.phasematched
    rows = ((w, d, gmap.gamma[i, j], flags[i, j])
            for i, w in enumerate(gmap.omega_p) for j, d in enumerate(gmap.delta))
    write_rows(stream, ("omega_p_rad_s", "delta_rad_s", "gamma_per_W_m", "phasematched"), rows)
