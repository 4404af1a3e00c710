"""
Joint spectral amplitude of the emitted photon triplets.

Detunings are measured from the emission centers: nu_mu = omega_mu - omega_mu0. With
the pump center equal to the sum of the emission centers, the pump detuning is
nu_r + nu_s + nu_i. The "stripped" amplitude drops the prefactors of the pump
envelope and is the one that enters the flux integral.
"""
import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike
from scipy.constants import pi
from scipy.integrate import trapezoid

from ._csv import format_value, write_rows
from ._errors import GridTooCoarse, GridTruncation, InputError
from ._numerics import NumericsConfig, default_numerics
from ._process import (
    CenterProperties,
    ProcessConfig,
    ProcessModel,
    PumpEnvelope,
    SpectralFilter,
    center_properties,
)
from .fiber_modes import FiberSpec
from .phasematching import ProcessFrequencies, delta_k

__all__ = ("PumpEnvelope", "SpectralFilter", "JsaGrid", "RotatedCoords", "RotatedSlice",
           "CoordinatePlane", "Marginal", "pump_spectral_amplitude", "phasematching_factor",
           "phasematching_function", "default_jsa_axes", "jsa", "to_rotated", "from_rotated",
           "jsa_slice_rotated", "jsa_axis_rotated", "filtered_jsa", "marginal_two_photon",
           "marginal_single", "jsa_coordinate_planes", "write_jsa_csv", "write_matrix_csv",)

logger = logging.getLogger(__name__)

MODES = ("r", "s", "i")

_S3 = 1 / np.sqrt(3)
# Rows map (nu_r, nu_s, nu_i) onto (nu_plus, nu_A, nu_B); orthogonal
_ROTATION = np.array([
    [_S3, _S3, _S3],
    [(1 - _S3) / 2, (-1 - _S3) / 2, _S3],
    [(1 + _S3) / 2, (-1 + _S3) / 2, -_S3],
])


def pump_spectral_amplitude(envelope: PumpEnvelope,
                            omega: ArrayLike) -> Union[float, np.ndarray]:
    """
    Return the normalized Gaussian pump amplitude at `omega` (rad/s).
    """
    return envelope.amplitude(omega)


def phasematching_factor(mismatch: ArrayLike, length: float) -> np.ndarray:
    """
    Return sinc(L dk / 2) exp(i L dk / 2) for phasemismatch `mismatch` (rad/m).
    """
    half_phase = length * np.asarray(mismatch, dtype=float) / 2
    return np.sinc(half_phase / pi) * np.exp(1j * half_phase)


def phasematching_function(fiber: FiberSpec, length: float, freqs: ProcessFrequencies,
                           peak_power: float = 0.0, *,
                           numerics: NumericsConfig = default_numerics) -> complex:
    """
    Return the phasematching function at one set of process frequencies.

    :param fiber: The fiber.
    :param length: Fiber length in meters.
    :param freqs: The process frequencies.
    :param peak_power: Pump peak power entering the nonlinear phase (W).
    :param numerics: Solver settings.
    :raises ModeNotGuided: If a mode is not guided.
    """
    mismatch = delta_k(fiber, freqs, peak_power, numerics=numerics)
    return complex(phasematching_factor(mismatch, length))


@dataclass(frozen=True)
class RotatedCoords:
    nu_plus: Union[float, np.ndarray]
    nu_a: Union[float, np.ndarray]
    nu_b: Union[float, np.ndarray]


def to_rotated(nu_r: ArrayLike, nu_s: ArrayLike, nu_i: ArrayLike) -> RotatedCoords:
    """
    Rotate detunings onto the energy-conservation axis nu_plus and the in-plane axes A, B.
    """
    stacked = np.stack(np.broadcast_arrays(*(np.asarray(v, dtype=float)
                                             for v in (nu_r, nu_s, nu_i))))
    nu_plus, nu_a, nu_b = np.tensordot(_ROTATION, stacked, axes=1)
    if nu_plus.ndim == 0:
        return RotatedCoords(float(nu_plus), float(nu_a), float(nu_b))
    return RotatedCoords(nu_plus, nu_a, nu_b)


def from_rotated(coords: RotatedCoords) -> Tuple[Union[float, np.ndarray], ...]:
    """
    Invert `to_rotated`, returning (nu_r, nu_s, nu_i).
    """
    stacked = np.stack(np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in
                                             (coords.nu_plus, coords.nu_a, coords.nu_b))))
    result = np.tensordot(_ROTATION.T, stacked, axes=1)
    if result.ndim == 1:
        return tuple(float(v) for v in result)
    return tuple(result)


@dataclass(frozen=True)
class JsaGrid:
    """
    Joint spectral amplitude sampled on a tensor grid of detunings (rad/s).
    """

    nu_r: np.ndarray = field(repr=False, compare=False)
    nu_s: np.ndarray = field(repr=False, compare=False)
    nu_i: np.ndarray = field(repr=False, compare=False)
    values: np.ndarray = field(repr=False, compare=False)
    """Complex amplitudes indexed [i_r, i_s, i_i]."""

    centers: Tuple[float, float, float]
    length: float
    sigma: float
    stripped: bool = False
    filtered: bool = False
    refinement_change: Optional[float] = None
    """Relative change of the total intensity when every axis was refined, if checked."""

    def __post_init__(self) -> None:
        for name, axis in zip(MODES, self.axes):
            if axis.ndim != 1 or axis.size < 2 or not np.all(np.diff(axis) > 0):
                raise InputError(f"Detuning axis nu_{name} must be strictly increasing")
        shape = tuple(axis.size for axis in self.axes)
        if self.values.shape != shape:
            raise InputError(f"JSA values have shape {self.values.shape}, axes need {shape}")
        if not np.all(np.isfinite(self.values)):
            raise InputError("JSA values must be finite")

    @property
    def axes(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.nu_r, self.nu_s, self.nu_i

    @property
    def intensity(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def total_intensity(self) -> float:
        result = self.intensity
        for axis in reversed(self.axes):
            result = trapezoid(result, axis, axis=-1)
        return float(result)


def _model(config: ProcessConfig, pump_span: float, numerics: NumericsConfig) -> ProcessModel:
    return ProcessModel(config, pump_span, numerics=numerics)


def _amplitude(model: ProcessModel, nu_r: np.ndarray, nu_s: np.ndarray, nu_i: np.ndarray,
               stripped: bool) -> Tuple[np.ndarray, np.ndarray]:
    config = model.config
    w_r, w_s, w_i = (center + nu for center, nu
                     in zip(config.emission_centers, (nu_r, nu_s, nu_i)))
    nu_p = nu_r + nu_s + nu_i
    if stripped:
        pump = np.exp(-nu_p ** 2 / config.pump.sigma ** 2)
    else:
        pump = config.pump.amplitude(config.pump.omega_p0 + nu_p)
    phasematching = phasematching_factor(model.delta_k(w_r, w_s, w_i), config.length)
    return np.asarray(pump), phasematching


def default_jsa_axes(config: ProcessConfig, *, numerics: NumericsConfig = default_numerics,
                     centers: Optional[CenterProperties] = None) -> np.ndarray:
    """
    Return the default detuning axis: +/- 4 max(sigma, 2 pi / |tau|_max) with
    `numerics.jsa_points` samples.
    """
    if centers is None:
        centers = center_properties(config, numerics)
    k_p = centers.k_prime[0]
    tau_max = max(abs(config.length * (k_p - k)) for k in centers.k_prime[1:])
    scale = config.pump.sigma if tau_max == 0 else max(config.pump.sigma, 2 * pi / tau_max)
    return np.linspace(-4 * scale, 4 * scale, numerics.jsa_points)


def _refined(axis: np.ndarray) -> np.ndarray:
    # 2n - 1 samples: the original ones plus every midpoint
    fine = np.empty(2 * axis.size - 1)
    fine[::2] = axis
    fine[1::2] = (axis[:-1] + axis[1:]) / 2
    return fine


def _total_intensity(model: ProcessModel, nu_r: np.ndarray, nu_s: np.ndarray,
                     nu_i: np.ndarray, stripped: bool) -> float:
    # One nu_r plane at a time keeps the refined grid out of memory
    grid_s, grid_i = np.meshgrid(nu_s, nu_i, indexing="ij")
    planes = np.empty(nu_r.size)
    for index, value in enumerate(nu_r):
        pump, phasematching = _amplitude(model, np.full_like(grid_s, value), grid_s, grid_i,
                                         stripped)
        intensity = np.abs(pump * phasematching) ** 2
        planes[index] = trapezoid(trapezoid(intensity, nu_i, axis=1), nu_s)
    return float(trapezoid(planes, nu_r))


def jsa(config: ProcessConfig,
        axes: Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]] = None, *,
        stripped: bool = False, verify: bool = True,
        numerics: NumericsConfig = default_numerics) -> JsaGrid:
    """
    Sample the joint spectral amplitude alpha(omega_r + omega_s + omega_i) phi(...).

    Unless `verify` is False, the total intensity is recomputed with every axis refined
    to 2n - 1 samples and the grid is rejected when it changes by `numerics.jsa_rel_tol`
    or more.

    :param config: The source design.
    :param axes: Detuning axes (nu_r, nu_s, nu_i) in rad/s; `default_jsa_axes` otherwise.
    :param stripped: Sample the prefactor-free amplitude used by the flux integral.
    :param verify: Run the refinement check.
    :param numerics: Table and grid settings.
    :return: The sampled `JsaGrid`.
    :raises GridTruncation: If the grid leaves the tabulated dispersion band.
    :raises GridTooCoarse: If the total intensity is not converged.
    """
    if axes is None:
        axis = default_jsa_axes(config, numerics=numerics)
        axes = (axis, axis, axis)
    nu_r, nu_s, nu_i = (np.asarray(a, dtype=float) for a in axes)
    pump_span = float(np.abs(nu_r).max() + np.abs(nu_s).max() + np.abs(nu_i).max())
    model = _model(config, pump_span, numerics)

    grid_r, grid_s, grid_i = np.meshgrid(nu_r, nu_s, nu_i, indexing="ij")
    pump, phasematching = _amplitude(model, grid_r, grid_s, grid_i, stripped)
    logger.debug("Sampled JSA on %dx%dx%d voxels", nu_r.size, nu_s.size, nu_i.size)
    grid = JsaGrid(nu_r=nu_r, nu_s=nu_s, nu_i=nu_i, values=pump * phasematching,
                   centers=config.emission_centers, length=config.length,
                   sigma=config.pump.sigma, stripped=stripped)
    if not verify:
        return grid

    coarse = grid.total_intensity()
    fine = _total_intensity(model, _refined(nu_r), _refined(nu_s), _refined(nu_i), stripped)
    change = abs(fine - coarse) / fine if fine > 0 else 0.0
    logger.debug("JSA total intensity changes by %.3g under refinement", change)
    if change >= numerics.jsa_rel_tol:
        raise GridTooCoarse(f"Total joint spectral intensity changes by {change:.3g} when the "
                            f"{nu_r.size}x{nu_s.size}x{nu_i.size} grid is refined (limit "
                            f"{numerics.jsa_rel_tol:g}); increase jsa_points, narrow the "
                            "detuning axes or use the broadened design")
    return replace(grid, refinement_change=change)


@dataclass(frozen=True)
class RotatedSlice:
    nu_plus: float
    nu_a: np.ndarray = field(repr=False, compare=False)
    nu_b: np.ndarray = field(repr=False, compare=False)
    intensity: np.ndarray = field(repr=False, compare=False)
    """Stripped joint spectral intensity indexed [i_a, i_b]."""


def jsa_slice_rotated(config: ProcessConfig, nu_plus: float, nu_a: Sequence[float],
                      nu_b: Sequence[float], *,
                      numerics: NumericsConfig = default_numerics) -> RotatedSlice:
    """
    Sample the stripped joint spectral intensity on a (nu_A, nu_B) plane at fixed nu_plus.

    :raises GridTruncation: If the plane leaves the tabulated dispersion band.
    """
    a = np.asarray(nu_a, dtype=float)
    b = np.asarray(nu_b, dtype=float)
    grid_a, grid_b = np.meshgrid(a, b, indexing="ij")
    nu_r, nu_s, nu_i = from_rotated(RotatedCoords(np.full_like(grid_a, nu_plus), grid_a, grid_b))
    model = _model(config, np.sqrt(3) * abs(nu_plus), numerics)
    pump, phasematching = _amplitude(model, *(np.asarray(v) for v in (nu_r, nu_s, nu_i)),
                                     stripped=True)
    return RotatedSlice(nu_plus=float(nu_plus), nu_a=a, nu_b=b,
                        intensity=np.abs(pump * phasematching) ** 2)


def jsa_axis_rotated(config: ProcessConfig, nu_plus: Sequence[float], *,
                     numerics: NumericsConfig = default_numerics) -> np.ndarray:
    """
    Return the stripped joint spectral intensity along nu_plus at nu_A = nu_B = 0.
    """
    plus = np.asarray(nu_plus, dtype=float)
    nu = plus / np.sqrt(3)
    model = _model(config, float(np.sqrt(3) * np.abs(plus).max()), numerics)
    pump, phasematching = _amplitude(model, nu, nu, nu, stripped=True)
    return np.abs(pump * phasematching) ** 2


def filtered_jsa(grid: JsaGrid, filters: Optional[Sequence[SpectralFilter]]) -> JsaGrid:
    """
    Multiply the amplitude by the Gaussian filter transmission of each mode.

    :param grid: The sampled amplitude.
    :param filters: Filters for the r, s and i modes; None leaves the grid unchanged.
    :return: A new, filtered `JsaGrid`.
    """
    if filters is None:
        return grid
    if len(filters) != 3:
        raise InputError(f"Expected 3 filters (r, s, i), got {len(filters)}")

    transmissions = [np.asarray(f.transmission(center + axis))
                     for f, center, axis in zip(filters, grid.centers, grid.axes)]
    weight = (transmissions[0][:, None, None] * transmissions[1][None, :, None]
              * transmissions[2][None, None, :])
    return JsaGrid(nu_r=grid.nu_r, nu_s=grid.nu_s, nu_i=grid.nu_i, values=grid.values * weight,
                   centers=grid.centers, length=grid.length, sigma=grid.sigma,
                   stripped=grid.stripped, filtered=True,
                   refinement_change=grid.refinement_change)


@dataclass(frozen=True)
class Marginal:
    """
    A one- or two-photon marginal spectrum over detunings (rad/s) of the kept modes.
    """

    modes: Tuple[str, ...]
    axes: Tuple[np.ndarray, ...] = field(repr=False, compare=False)
    values: np.ndarray = field(repr=False, compare=False)

    def integrate(self, mode: str) -> "Marginal":
        """
        Integrate over the detuning of `mode`, returning the lower-order marginal.
        """
        index = self.modes.index(mode)
        values = trapezoid(self.values, self.axes[index], axis=index)
        return Marginal(modes=self.modes[:index] + self.modes[index + 1:],
                        axes=self.axes[:index] + self.axes[index + 1:], values=values)


def _check_boundary(grid: JsaGrid, fraction: float) -> None:
    intensity = grid.intensity
    peak = float(intensity.max())
    faces = [intensity[0], intensity[-1], intensity[:, 0], intensity[:, -1],
             intensity[:, :, 0], intensity[:, :, -1]]
    boundary = max(float(face.max()) for face in faces)
    if peak > 0 and boundary > fraction * peak:
        raise GridTruncation(f"Joint spectral intensity at the grid boundary is "
                             f"{boundary / peak:.3g} of the peak (limit {fraction:g}); "
                             "widen the detuning axes")


def _mode_index(mode: str) -> int:
    if mode not in MODES:
        raise InputError(f"Unknown mode '{mode}', expected one of {', '.join(MODES)}")
    return MODES.index(mode)


def marginal_two_photon(grid: JsaGrid, traced: str = "i", *,
                        numerics: NumericsConfig = default_numerics) -> Marginal:
    """
    Return the two-photon marginal I2 obtained by integrating |F|^2 over the `traced` mode.

    :param grid: The sampled amplitude.
    :param traced: Mode integrated out: "r", "s" or "i".
    :raises GridTruncation: If the intensity has not decayed at the grid boundary.
    """
    index = _mode_index(traced)
    _check_boundary(grid, numerics.boundary_fraction)
    full = Marginal(modes=MODES, axes=grid.axes, values=grid.intensity)
    return full.integrate(MODES[index])


def marginal_single(grid: JsaGrid, kept: str = "r", *,
                    numerics: NumericsConfig = default_numerics) -> Marginal:
    """
    Return the single-photon marginal I1 of the `kept` mode.

    :raises GridTruncation: If the intensity has not decayed at the grid boundary.
    """
    index = _mode_index(kept)
    others = [m for m in MODES if m != MODES[index]]
    return marginal_two_photon(grid, others[-1], numerics=numerics).integrate(others[0])


@dataclass(frozen=True)
class CoordinatePlane:
    """
    Pump, phasematching and joint intensities on the plane where one detuning is zero.
    """

    modes: Tuple[str, str]
    axis_a: np.ndarray = field(repr=False, compare=False)
    axis_b: np.ndarray = field(repr=False, compare=False)
    pump: np.ndarray = field(repr=False, compare=False)
    phasematching: np.ndarray = field(repr=False, compare=False)
    jsi: np.ndarray = field(repr=False, compare=False)


def jsa_coordinate_planes(config: ProcessConfig, axis: Sequence[float], *,
                          numerics: NumericsConfig = default_numerics) -> List[CoordinatePlane]:
    """
    Sample the (r, s), (r, i) and (s, i) planes through the emission centers.

    Each plane carries |alpha|^2, |phi|^2 and their product from the stripped amplitude.

    :param config: The source design.
    :param axis: Detuning axis (rad/s) used for both in-plane directions.
    """
    nu = np.asarray(axis, dtype=float)
    model = _model(config, 2 * float(np.abs(nu).max()), numerics)
    grid_a, grid_b = np.meshgrid(nu, nu, indexing="ij")
    zero = np.zeros_like(grid_a)

    planes = []
    for modes, triple in ((("r", "s"), (grid_a, grid_b, zero)),
                          (("r", "i"), (grid_a, zero, grid_b)),
                          (("s", "i"), (zero, grid_a, grid_b))):
        pump, phasematching = _amplitude(model, *triple, stripped=True)
        pump_intensity = np.abs(pump) ** 2
        pm_intensity = np.abs(phasematching) ** 2
        planes.append(CoordinatePlane(modes=modes, axis_a=nu, axis_b=nu, pump=pump_intensity,
                                      phasematching=pm_intensity,
                                      jsi=pump_intensity * pm_intensity))
    return planes


def write_jsa_csv(grid: JsaGrid, stream: TextIO) -> None:
    """
    Write a sampled amplitude as a commented metadata header followed by flat CSV rows.
    """
    meta: Dict[str, object] = {
        "omega_r0": grid.centers[0], "omega_s0": grid.centers[1], "omega_i0": grid.centers[2],
        "length_m": grid.length, "sigma_rad_s": grid.sigma,
        "stripped": grid.stripped, "filtered": grid.filtered,
    }
    if grid.refinement_change is not None:
        meta["refinement_change"] = grid.refinement_change
    for key, value in meta.items():
        stream.write(f"# {key}={format_value(value)}\n")

    grid_r, grid_s, grid_i = np.meshgrid(*grid.axes, indexing="ij")
    values = grid.values.ravel()
    rows = zip(grid_r.ravel(), grid_s.ravel(), grid_i.ravel(), values.real, values.imag,
               np.abs(values) ** 2)
    write_rows(stream, ("nu_r", "nu_s", "nu_i", "re", "im", "intensity"), rows)


def write_matrix_csv(row_axis: np.ndarray, col_axis: np.ndarray, matrix: np.ndarray,
                     stream: TextIO, corner: str = "row\\col") -> None:
    """
    Write a 2-D map with the column axis as the header row and the row axis as first column.
    """
    rows = ([r] + list(values) for r, values in zip(row_axis, matrix))
    write_rows(stream, [corner] + [format_value(v) for v in col_axis], rows)
