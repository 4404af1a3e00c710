"""
Hybrid HE(1,m) modes of an air-clad step-index fiber.

The exact vectorial characteristic equation is solved for the effective index,
and the dominant (x-polarized) transverse field component is sampled on a
Cartesian grid for overlap integrals.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, TextIO, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike
from scipy.constants import c
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq
from scipy.special import j0, j1, jv, kve

from ._csv import write_rows
from ._defaults import Defaults
from ._errors import DesignError, GridTooCoarse, ModeNotGuided
from ._mode_id import ModeId
from ._numerics import NumericsConfig, default_numerics
from .dispersion import (
    FUSED_SILICA,
    SellmeierModel,
    omega_to_wavelength,
    refractive_index_at_omega,
)

__all__ = ("FiberSpec", "ModeId", "ProfileGrid", "ModeProfile", "ModeDispersion",
           "solve_neff", "guided_indices", "characteristic_residual",
           "propagation_constant", "group_slowness", "mode_profile",
           "tabulate_dispersion", "write_dispersion_csv",)

logger = logging.getLogger(__name__)

_EDGE = 1e-9


@dataclass(frozen=True)
class FiberSpec:
    """
    Geometry and materials of a cylindrical fiber with a homogeneous cladding.
    """

    radius: float
    """Core radius in meters."""

    core: SellmeierModel = FUSED_SILICA
    """Dispersion model of the core material."""

    cladding_index: float = Defaults.cladding_index
    """Constant refractive index of the cladding."""

    def __post_init__(self) -> None:
        if not self.radius > 0:
            raise DesignError(f"Fiber radius must be positive, got {self.radius} m")
        if not self.cladding_index >= 1.0:
            raise DesignError(f"Cladding index must be >= 1, got {self.cladding_index}")

    def with_radius(self, radius: float) -> "FiberSpec":
        return FiberSpec(radius=radius, core=self.core, cladding_index=self.cladding_index)

    def core_index(self, omega: float) -> float:
        return float(refractive_index_at_omega(self.core, omega))

    def v_number(self, omega: float) -> float:
        """
        Return the normalized frequency V = k0 r sqrt(n_core^2 - n_clad^2).
        """
        n_core = self.core_index(omega)
        return omega / c * self.radius * np.sqrt(n_core ** 2 - self.cladding_index ** 2)


def _he_terms(n_eff: ArrayLike, k0a: float, n_core: float,
              n_clad: float) -> Tuple[np.ndarray, np.ndarray]:
    n = np.asarray(n_eff, dtype=float)
    u = k0a * np.sqrt(n_core ** 2 - n ** 2)
    w = k0a * np.sqrt(n ** 2 - n_clad ** 2)
    rho = (n_clad / n_core) ** 2

    b = -kve(0, w) / (w * kve(1, w)) - 1.0 / w ** 2
    s = (1.0 / u ** 2 + 1.0 / w ** 2) * (1.0 / u ** 2 + rho / w ** 2)
    root = np.sqrt(((1.0 - rho) * b / 2.0) ** 2 + s)
    rhs = -(1.0 + rho) * b / 2.0 + 1.0 / u ** 2 - root

    return j0(u), u * j1(u) * rhs


def _he_function(n_eff: ArrayLike, k0a: float, n_core: float, n_clad: float) -> np.ndarray:
    # J1'(u)/(u J1(u)) solved from the azimuthal-order-1 quadratic, HE branch,
    # multiplied through by u J1(u) so the function has no poles.
    bessel, product = _he_terms(n_eff, k0a, n_core, n_clad)
    return bessel - product


@lru_cache(maxsize=65536)
def _he_roots(fiber: FiberSpec, omega: float, scan_points: int,
              xtol: float) -> Tuple[float, ...]:
    n_core = fiber.core_index(omega)
    n_clad = fiber.cladding_index
    k0a = omega / c * fiber.radius

    grid = np.linspace(n_core - _EDGE, n_clad + _EDGE, scan_points)
    values = _he_function(grid, k0a, n_core, n_clad)
    signs = np.sign(values)
    crossings = np.flatnonzero((signs[:-1] * signs[1:] < 0)
                               & np.isfinite(values[:-1]) & np.isfinite(values[1:]))

    def f(n: float) -> float:
        return float(_he_function(n, k0a, n_core, n_clad))

    roots = tuple(brentq(f, grid[i + 1], grid[i], xtol=xtol) for i in crossings)
    logger.debug("HE roots at r=%.6g um, omega=%.6e rad/s: %s",
                 fiber.radius * 1e6, omega, roots)
    return roots


def guided_indices(fiber: FiberSpec, omega: float, *,
                   numerics: NumericsConfig = default_numerics) -> Tuple[float, ...]:
    """
    Return the effective indices of every guided HE(1,m) mode, in descending order.

    :param fiber: The fiber.
    :param omega: Angular frequency in rad/s.
    :param numerics: Scan density and root tolerance.
    :return: Tuple of effective indices, HE11 first.
    """
    return _he_roots(fiber, float(omega), numerics.root_scan_points, numerics.root_xtol)


def solve_neff(fiber: FiberSpec, mode: ModeId, omega: float, *,
               numerics: NumericsConfig = default_numerics) -> float:
    """
    Solve the exact characteristic equation for the effective index of a mode.

    The effective-index interval between the cladding and core indices is scanned
    for sign changes of the pole-free characteristic function and every bracket is
    polished with Brent's method. Roots are ordered by descending effective index
    and the m-th root is returned for mode HE(1,m).

    :param fiber: The fiber.
    :param mode: The HE mode to solve for.
    :param omega: Angular frequency in rad/s.
    :param numerics: Scan density and root tolerance.
    :return: The effective index.
    :raises OutOfValidityRange: If omega is outside the core material validity.
    :raises ModeNotGuided: If fewer than m guided roots exist.
    """
    roots = guided_indices(fiber, omega, numerics=numerics)
    index = mode.radial_index - 1
    if len(roots) <= index:
        raise ModeNotGuided(str(mode), fiber.radius, float(omega), len(roots))
    return roots[index]


def characteristic_residual(fiber: FiberSpec, mode: ModeId, omega: float,
                            n_eff: float) -> float:
    """
    Return the characteristic function at `n_eff`, normalized by the magnitude of its terms.

    Both HE(1,m) modes share one characteristic function; `mode` is accepted so the
    residual can be reported alongside the mode it was solved for.
    """
    n_core = fiber.core_index(omega)
    bessel, product = _he_terms(n_eff, omega / c * fiber.radius, n_core,
                                fiber.cladding_index)
    scale = abs(float(bessel)) + abs(float(product))
    return float(bessel - product) / scale if scale else 0.0


def propagation_constant(fiber: FiberSpec, mode: ModeId, omega: float, *,
                         numerics: NumericsConfig = default_numerics) -> float:
    """
    Return the propagation constant k = n_eff omega / c in rad/m.

    :raises ModeNotGuided: If the mode is not guided at `omega`.
    """
    return solve_neff(fiber, mode, omega, numerics=numerics) * omega / c


def group_slowness(fiber: FiberSpec, mode: ModeId, omega: float, *,
                   numerics: NumericsConfig = default_numerics) -> float:
    """
    Return the group slowness dk/domega in s/m.

    A central difference with relative step `numerics.fd_relative_step` is
    Richardson-extrapolated once with the half step.

    :raises ModeNotGuided: If the mode is not guided at any stencil point.
    """
    def central(step: float) -> float:
        k_plus = propagation_constant(fiber, mode, omega + step, numerics=numerics)
        k_minus = propagation_constant(fiber, mode, omega - step, numerics=numerics)
        return (k_plus - k_minus) / (2 * step)

    step = omega * numerics.fd_relative_step
    coarse = central(step)
    fine = central(step / 2)
    return (4 * fine - coarse) / 3


@dataclass(frozen=True)
class ProfileGrid:
    """
    A square Cartesian sampling window centered on the fiber axis.
    """

    points: int
    """Samples per axis."""

    half_width: float
    """Half-width of the window in meters."""

    def __post_init__(self) -> None:
        if self.points < 2:
            raise DesignError(f"A profile grid needs at least 2 points per axis, "
                              f"got {self.points}")
        if not self.half_width > 0:
            raise DesignError(f"Profile half-width must be positive, got {self.half_width}")

    @classmethod
    def for_fiber(cls, fiber: FiberSpec, points: Optional[int] = None, *,
                  numerics: NumericsConfig = default_numerics) -> "ProfileGrid":
        return cls(points=numerics.profile_points if points is None else points,
                   half_width=numerics.profile_span_radii * fiber.radius)

    @property
    def axis(self) -> np.ndarray:
        return np.linspace(-self.half_width, self.half_width, self.points)

    @property
    def cell_area(self) -> float:
        step = 2 * self.half_width / (self.points - 1)
        return step * step

    def doubled(self) -> "ProfileGrid":
        return ProfileGrid(points=2 * self.points, half_width=self.half_width)


@dataclass(frozen=True)
class ModeProfile:
    """
    The dominant transverse field component A(x, y) of a mode, discretely normalized.
    """

    mode: ModeId
    omega: float
    grid: ProfileGrid
    values: np.ndarray = field(repr=False, compare=False)
    """Real amplitudes in 1/m, indexed [iy, ix]."""

    @property
    def x(self) -> np.ndarray:
        return self.grid.axis

    @property
    def y(self) -> np.ndarray:
        return self.grid.axis

    def norm(self) -> float:
        return float(np.sum(self.values ** 2) * self.grid.cell_area)


def _field_x(fiber: FiberSpec, n_eff: float, omega: float, grid: ProfileGrid) -> np.ndarray:
    n_core = fiber.core_index(omega)
    k0a = omega / c * fiber.radius
    u = k0a * np.sqrt(n_core ** 2 - n_eff ** 2)
    w = k0a * np.sqrt(n_eff ** 2 - fiber.cladding_index ** 2)
    v = k0a * np.sqrt(n_core ** 2 - fiber.cladding_index ** 2)

    b1 = j0(u) / (u * j1(u)) - 1.0 / u ** 2
    b2 = -kve(0, w) / (w * kve(1, w)) - 1.0 / w ** 2
    f2 = (v / (u * w)) ** 2 / (b1 + b2)
    a1 = (f2 - 1.0) / 2.0
    a2 = (f2 + 1.0) / 2.0

    x = grid.axis
    xx, yy = np.meshgrid(x, x)
    rr = np.hypot(xx, yy)
    rel = rr / fiber.radius
    with np.errstate(invalid="ignore", divide="ignore"):
        cos2 = np.where(rr > 0, (xx ** 2 - yy ** 2) / rr ** 2, 1.0)

    core = rel <= 1.0
    values = np.empty_like(rr)
    ur = u * rel[core]
    values[core] = -(a1 * j0(ur) + a2 * jv(2, ur) * cos2[core]) / j1(u)

    wr = w * rel[~core]
    # K_n(wR)/K_1(w) with the exponential scaling of kve removed
    ratio = np.exp(-w * (rel[~core] - 1.0)) / kve(1, w)
    values[~core] = -(u / w) * (a1 * kve(0, wr) - a2 * kve(2, wr) * cos2[~core]) * ratio
    return values


def mode_profile(fiber: FiberSpec, mode: ModeId, omega: float,
                 grid: Optional[ProfileGrid] = None, *,
                 numerics: NumericsConfig = default_numerics) -> ModeProfile:
    """
    Sample the normalized x-polarized transverse field of a mode.

    :param fiber: The fiber.
    :param mode: The HE mode.
    :param omega: Angular frequency in rad/s.
    :param grid: Sampling window; defaults to `numerics.profile_points` samples
        spanning `numerics.profile_span_radii` core radii on each side.
    :param numerics: Grid defaults and the refinement tolerance.
    :return: A `ModeProfile` with sum(A^2) dx dy = 1 and a positive on-axis value.
    :raises ModeNotGuided: If the mode is not guided.
    :raises GridTooCoarse: If `numerics.verify_profiles` is set and the raw norm drifts
        by more than `numerics.profile_tolerance` when the resolution is doubled.
    """
    if grid is None:
        grid = ProfileGrid.for_fiber(fiber, numerics=numerics)
    return _cached_profile(fiber, mode, float(omega), grid, numerics)


@lru_cache(maxsize=256)
def _cached_profile(fiber: FiberSpec, mode: ModeId, omega: float, grid: ProfileGrid,
                    numerics: NumericsConfig) -> ModeProfile:
    n_eff = solve_neff(fiber, mode, omega, numerics=numerics)
    values = _field_x(fiber, n_eff, omega, grid)
    raw_norm = float(np.sum(values ** 2) * grid.cell_area)

    if numerics.verify_profiles:
        fine_grid = grid.doubled()
        fine_norm = float(np.sum(_field_x(fiber, n_eff, omega, fine_grid) ** 2)
                          * fine_grid.cell_area)
        drift = abs(fine_norm - raw_norm) / fine_norm
        if drift > numerics.profile_tolerance:
            raise GridTooCoarse(f"Profile norm of {mode} changes by {drift:.3g} when the "
                                f"grid is doubled from {grid.points} points; "
                                "increase profile_points")

    center = grid.points // 2
    sign = 1.0 if values[center, center] >= 0 else -1.0
    values = sign * values / np.sqrt(raw_norm)
    values.setflags(write=False)
    return ModeProfile(mode=mode, omega=omega, grid=grid, values=values)


@dataclass(frozen=True)
class ModeDispersion:
    """
    Tabulated dispersion of one mode with spline interpolation in between samples.
    """

    mode: ModeId
    omega: np.ndarray = field(repr=False, compare=False)
    n_eff: np.ndarray = field(repr=False, compare=False)
    _spline: CubicSpline = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_spline", CubicSpline(self.omega, self.n_eff))

    @property
    def k(self) -> np.ndarray:
        return self.n_eff * self.omega / c

    @property
    def k_prime(self) -> np.ndarray:
        return self.k_prime_at(self.omega)

    @property
    def band(self) -> Tuple[float, float]:
        return float(self.omega[0]), float(self.omega[-1])

    def n_eff_at(self, omega: ArrayLike) -> Union[float, np.ndarray]:
        return self._spline(omega)

    def k_at(self, omega: ArrayLike) -> Union[float, np.ndarray]:
        omega = np.asarray(omega, dtype=float)
        return self._spline(omega) * omega / c

    def k_prime_at(self, omega: ArrayLike) -> Union[float, np.ndarray]:
        omega = np.asarray(omega, dtype=float)
        return (self._spline(omega) + omega * self._spline(omega, 1)) / c


def tabulate_dispersion(fiber: FiberSpec, mode: ModeId, omega_min: float, omega_max: float,
                        points: Optional[int] = None, *,
                        numerics: NumericsConfig = default_numerics) -> ModeDispersion:
    """
    Solve a mode over a frequency band and return the interpolating table.

    :param fiber: The fiber.
    :param mode: The HE mode.
    :param omega_min: Lower band edge in rad/s.
    :param omega_max: Upper band edge in rad/s.
    :param points: Number of samples; by default the band is sampled with relative
        spacing `numerics.table_relative_spacing`.
    :param numerics: Solver settings.
    :return: The `ModeDispersion` table.
    :raises ModeNotGuided: If the mode is not guided somewhere in the band.
    """
    if not 0 < omega_min < omega_max:
        raise DesignError(f"Invalid frequency band [{omega_min}, {omega_max}] rad/s")
    if points is None:
        center = (omega_min + omega_max) / 2
        span = (omega_max - omega_min) / center
        points = max(8, int(np.ceil(span / numerics.table_relative_spacing)) + 1)

    return _cached_table(fiber, mode, float(omega_min), float(omega_max), points, numerics)


@lru_cache(maxsize=128)
def _cached_table(fiber: FiberSpec, mode: ModeId, omega_min: float, omega_max: float,
                  points: int, numerics: NumericsConfig) -> ModeDispersion:
    omega = np.linspace(omega_min, omega_max, points)
    n_eff = np.array([solve_neff(fiber, mode, w, numerics=numerics) for w in omega])
    logger.debug("Tabulated %s over [%.6e, %.6e] rad/s with %d points",
                 mode, omega_min, omega_max, points)
    omega.setflags(write=False)
    n_eff.setflags(write=False)
    return ModeDispersion(mode=mode, omega=omega, n_eff=n_eff)


def write_dispersion_csv(table: ModeDispersion, stream: TextIO) -> None:
    """
    Write a dispersion table with the columns omega_rad_s, lambda_um, n_eff, k_rad_m, kprime_s_m.
    """
    lam_um = np.asarray(omega_to_wavelength(table.omega)) * 1e6
    rows = zip(table.omega, lam_um, table.n_eff, table.k, table.k_prime)
    write_rows(stream, ("omega_rad_s", "lambda_um", "n_eff", "k_rad_m", "kprime_s_m"), rows)
