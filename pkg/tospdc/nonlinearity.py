"""
Effective areas and nonlinear coefficients of the third-order process.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.constants import c, epsilon_0

from ._defaults import Defaults
from ._errors import DegenerateOverlap, DesignError, GridMismatch
from ._mode_id import ModeId
from ._numerics import NumericsConfig, default_numerics
from .fiber_modes import FiberSpec, ModeProfile, ProfileGrid, mode_profile

__all__ = ("Chi3", "NonlinearCoefficients", "effective_area_tospdc", "effective_area_self",
           "effective_area_cross", "gamma_tospdc", "gamma_self", "gamma_cross",
           "nonlinear_phase", "compute_coefficients",)

logger = logging.getLogger(__name__)

# Overlaps smaller than this fraction of their Hoelder bound count as vanishing
_OVERLAP_FLOOR = 1e-3


@dataclass(frozen=True)
class Chi3:
    """
    Third-order electric susceptibility in m^2/V^2.
    """

    value: float = Defaults.chi3

    def __post_init__(self) -> None:
        if not self.value > 0:
            raise DesignError(f"chi3 must be positive, got {self.value} m^2/V^2")


@dataclass(frozen=True)
class NonlinearCoefficients:
    """
    Nonlinear coefficients in 1/(W m) and effective areas in m^2 of one design point.
    """

    gamma: float
    gamma_p: float
    gamma_pr: float
    gamma_ps: float
    gamma_pi: float
    a_eff: float
    a_eff_p: float
    a_eff_pmu: Tuple[float, float, float]

    def __post_init__(self) -> None:
        values = (self.gamma, self.gamma_p, self.gamma_pr, self.gamma_ps, self.gamma_pi,
                  self.a_eff, self.a_eff_p) + tuple(self.a_eff_pmu)
        if not all(np.isfinite(v) and v > 0 for v in values):
            raise DesignError(f"Nonlinear coefficients must be positive and finite, got {self!r}")


def _check_grids(profiles: Sequence[ModeProfile]) -> ProfileGrid:
    grid = profiles[0].grid
    for profile in profiles[1:]:
        if profile.grid != grid:
            raise GridMismatch(f"Profiles sampled on different grids: {grid} and "
                               f"{profile.grid}; sample every mode with the same ProfileGrid")
    return grid


def _moment4(profile: ModeProfile) -> float:
    return float(np.sum(profile.values ** 4) * profile.grid.cell_area)


def effective_area_tospdc(a_p: ModeProfile, a_r: ModeProfile, a_s: ModeProfile,
                          a_i: ModeProfile) -> float:
    """
    Return the four-field effective area 1 / |sum A_p A_r A_s A_i dx dy|.

    The modulus makes the area positive when the pump profile has a radial node.

    :raises GridMismatch: If the profiles are sampled on different grids.
    :raises DegenerateOverlap: If the overlap is below 1e-3 of its Hoelder bound.
    """
    profiles = (a_p, a_r, a_s, a_i)
    grid = _check_grids(profiles)
    overlap = abs(float(np.sum(a_p.values * a_r.values * a_s.values * a_i.values)
                        * grid.cell_area))
    bound = float(np.prod([_moment4(p) for p in profiles])) ** 0.25
    if overlap < _OVERLAP_FLOOR * bound:
        raise DegenerateOverlap(f"Four-field overlap {overlap:.3e} 1/m^2 is negligible "
                                f"against its bound {bound:.3e} 1/m^2")
    return 1.0 / overlap


def effective_area_self(a_p: ModeProfile) -> float:
    """
    Return the self-phase-modulation area 1 / sum A_p^4 dx dy.
    """
    return 1.0 / _moment4(a_p)


def effective_area_cross(a_p: ModeProfile, a_mu: ModeProfile) -> float:
    """
    Return the cross-phase-modulation area 1 / sum A_p^2 A_mu^2 dx dy.

    :raises GridMismatch: If the profiles are sampled on different grids.
    :raises DegenerateOverlap: If the profiles barely overlap.
    """
    grid = _check_grids((a_p, a_mu))
    overlap = float(np.sum(a_p.values ** 2 * a_mu.values ** 2) * grid.cell_area)
    bound = np.sqrt(_moment4(a_p) * _moment4(a_mu))
    if overlap < _OVERLAP_FLOOR * bound:
        raise DegenerateOverlap(f"Cross overlap {overlap:.3e} 1/m^2 is negligible "
                                f"against its bound {bound:.3e} 1/m^2")
    return 1.0 / overlap


def _check_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise DesignError(f"{name} must be positive, got {value}")


def gamma_tospdc(chi3: Chi3, omega_p0: float, n_p: float, a_eff: float) -> float:
    """
    Return gamma = 3 chi3 omega_p0 / (4 eps0 c^2 n_p^2 A_eff) in 1/(W m).
    """
    _check_positive(omega_p0=omega_p0, n_p=n_p, a_eff=a_eff)
    return 3 * chi3.value * omega_p0 / (4 * epsilon_0 * c ** 2 * n_p ** 2 * a_eff)


def gamma_self(chi3: Chi3, omega_p0: float, n_p: float, a_eff_p: float) -> float:
    """
    Return the pump self-phase-modulation coefficient gamma_p in 1/(W m).
    """
    _check_positive(omega_p0=omega_p0, n_p=n_p, a_eff_p=a_eff_p)
    return 3 * chi3.value * omega_p0 / (4 * epsilon_0 * c ** 2 * n_p ** 2 * a_eff_p)


def gamma_cross(chi3: Chi3, omega_mu0: float, n_p: float, n_mu: float,
                a_eff_pmu: float) -> float:
    """
    Return the cross-phase-modulation coefficient gamma_pmu in 1/(W m).

    :param chi3: Third-order susceptibility.
    :param omega_mu0: Central frequency of the emitted mode in rad/s.
    :param n_p: Pump refractive index.
    :param n_mu: Refractive index of the emitted mode.
    :param a_eff_pmu: Pump/emitted-mode cross area in m^2.
    """
    _check_positive(omega_mu0=omega_mu0, n_p=n_p, n_mu=n_mu, a_eff_pmu=a_eff_pmu)
    return 3 * chi3.value * omega_mu0 / (4 * epsilon_0 * c ** 2 * n_p * n_mu * a_eff_pmu)


def nonlinear_phase(coefficients: NonlinearCoefficients, peak_power: float) -> float:
    """
    Return the nonlinear phase [gamma_p - 2 (gamma_pr + gamma_ps + gamma_pi)] P in rad/m.

    :raises DesignError: If the peak power is negative.
    """
    if peak_power < 0:
        raise DesignError(f"Peak power must be non-negative, got {peak_power} W")
    cross = coefficients.gamma_pr + coefficients.gamma_ps + coefficients.gamma_pi
    return (coefficients.gamma_p - 2 * cross) * peak_power


def compute_coefficients(fiber: FiberSpec, omegas: Tuple[float, float, float, float],
                         indices: Tuple[float, float, float, float], chi3: Chi3, *,
                         grid: Optional[ProfileGrid] = None,
                         numerics: NumericsConfig = default_numerics) -> NonlinearCoefficients:
    """
    Evaluate every coefficient of a design point from its mode profiles.

    The pump profile is HE12 at omega_p0 and the three emitted profiles are HE11 at
    their own central frequencies, all sampled on one grid.

    :param fiber: The fiber.
    :param omegas: Central frequencies (p, r, s, i) in rad/s.
    :param indices: Refractive indices (p, r, s, i) entering the coefficients.
    :param chi3: Third-order susceptibility.
    :param grid: Common profile grid; defaults to the numerics profile grid.
    :param numerics: Profile settings.
    :return: The `NonlinearCoefficients`.
    """
    if grid is None:
        grid = ProfileGrid.for_fiber(fiber, numerics=numerics)
    omega_p, omega_r, omega_s, omega_i = omegas
    n_p, n_r, n_s, n_i = indices

    a_p = mode_profile(fiber, ModeId.HE12, omega_p, grid, numerics=numerics)
    emitted = [mode_profile(fiber, ModeId.HE11, w, grid, numerics=numerics)
               for w in (omega_r, omega_s, omega_i)]

    a_eff = effective_area_tospdc(a_p, *emitted)
    a_eff_p = effective_area_self(a_p)
    a_eff_pmu = tuple(effective_area_cross(a_p, a) for a in emitted)

    gammas_pmu = [gamma_cross(chi3, w, n_p, n, area)
                  for w, n, area in zip((omega_r, omega_s, omega_i), (n_r, n_s, n_i), a_eff_pmu)]
    coefficients = NonlinearCoefficients(
        gamma=gamma_tospdc(chi3, omega_p, n_p, a_eff),
        gamma_p=gamma_self(chi3, omega_p, n_p, a_eff_p),
        gamma_pr=gammas_pmu[0],
        gamma_ps=gammas_pmu[1],
        gamma_pi=gammas_pmu[2],
        a_eff=a_eff,
        a_eff_p=a_eff_p,
        a_eff_pmu=(a_eff_pmu[0], a_eff_pmu[1], a_eff_pmu[2]),
    )
    logger.debug("r=%.6g um: gamma=%.6g 1/(W m), A_eff=%.6g um^2", fiber.radius * 1e6,
                 coefficients.gamma, a_eff * 1e12)
    return coefficients
