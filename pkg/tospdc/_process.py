import logging
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Any, Optional, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike
from scipy.constants import pi

from ._defaults import Defaults
from ._errors import DesignError, GridTruncation
from ._mode_id import ModeId
from ._numerics import NumericsConfig, default_numerics
from .dispersion import refractive_index_at_omega, wavelength_to_omega
from .fiber_modes import FiberSpec, ModeDispersion, group_slowness, tabulate_dispersion
from .nonlinearity import Chi3, NonlinearCoefficients, compute_coefficients, nonlinear_phase
from .phasematching import ProcessFrequencies

__all__ = ("PumpEnvelope", "SpectralFilter", "ProcessConfig", "CenterProperties",
           "center_properties", "ProcessModel",)

logger = logging.getLogger(__name__)

FloatOrArray = Union[float, np.ndarray]


@dataclass(frozen=True)
class PumpEnvelope:
    """
    Gaussian pump spectral envelope centered at `omega_p0` with bandwidth `sigma` (rad/s).
    """

    omega_p0: float
    sigma: float

    def __post_init__(self) -> None:
        if not self.omega_p0 > 0:
            raise DesignError(f"Pump frequency must be positive, got {self.omega_p0} rad/s")
        if not self.sigma > 0:
            raise DesignError(f"Pump bandwidth must be positive, got {self.sigma} rad/s")

    def amplitude(self, omega: ArrayLike) -> FloatOrArray:
        """
        Return the L2-normalized amplitude 2^(1/4) / (pi^(1/4) sqrt(sigma)) exp(-nu^2 / sigma^2).
        """
        nu = np.asarray(omega, dtype=float) - self.omega_p0
        value = 2 ** 0.25 / (pi ** 0.25 * np.sqrt(self.sigma)) * np.exp(-nu ** 2 / self.sigma ** 2)
        return float(value) if value.ndim == 0 else value


@dataclass(frozen=True)
class SpectralFilter:
    """
    Gaussian amplitude filter exp(-(omega - center)^2 / sigma_f^2) with unit peak transmission.
    """

    center: float
    sigma_f: float

    def __post_init__(self) -> None:
        if not self.center > 0:
            raise DesignError(f"Filter center must be positive, got {self.center} rad/s")
        if not self.sigma_f > 0:
            raise DesignError(f"Filter bandwidth must be positive, got {self.sigma_f} rad/s")

    def transmission(self, omega: ArrayLike) -> FloatOrArray:
        if np.isinf(self.sigma_f):
            value = np.ones_like(np.asarray(omega, dtype=float))
        else:
            value = np.exp(-(np.asarray(omega, dtype=float) - self.center) ** 2
                           / self.sigma_f ** 2)
        return float(value) if value.ndim == 0 else value


Filters = Tuple[SpectralFilter, SpectralFilter, SpectralFilter]


@dataclass(frozen=True)
class ProcessConfig:
    """
    A complete source design: fiber, pump, emission centers, filters and material nonlinearity.
    """

    fiber: FiberSpec
    """The fiber carrying the pump in HE12 and the triplets in HE11."""

    length: float
    """Fiber length in meters."""

    pump: PumpEnvelope
    """Pump spectral envelope."""

    average_power: float
    """Average pump power in W."""

    omega_r0: float
    omega_s0: float
    omega_i0: float
    """Emission central frequencies (rad/s); they sum to the pump frequency."""

    repetition_rate: float = Defaults.repetition_rate
    """Pulse repetition rate in Hz; enters only the peak power."""

    filters: Optional[Filters] = None
    """Spectral filters for the signal-1, signal-2 and idler modes, or None."""

    chi3: Chi3 = Chi3()
    """Third-order susceptibility."""

    nonlinear_phase: bool = True
    """Whether the nonlinear phase enters the phasemismatch of flux calculations."""

    def __post_init__(self) -> None:
        if not self.length > 0:
            raise DesignError(f"Fiber length must be positive, got {self.length} m")
        if not self.average_power >= 0:
            raise DesignError(f"Average power must be non-negative, got {self.average_power} W")
        if not self.repetition_rate > 0:
            raise DesignError(f"Repetition rate must be positive, got {self.repetition_rate} Hz")
        if self.filters is not None and len(self.filters) != 3:
            raise DesignError(f"Expected 3 filters (r, s, i), got {len(self.filters)}")
        # Raises if energy is not conserved
        self.centers

    @property
    def centers(self) -> ProcessFrequencies:
        return ProcessFrequencies(omega_p=self.pump.omega_p0, omega_r=self.omega_r0,
                                  omega_s=self.omega_s0, omega_i=self.omega_i0)

    @property
    def emission_centers(self) -> Tuple[float, float, float]:
        return self.omega_r0, self.omega_s0, self.omega_i0

    @property
    def peak_power(self) -> float:
        """
        Peak power P = p sigma / (sqrt(2 pi) R) in W.
        """
        return self.average_power * self.pump.sigma / (np.sqrt(2 * pi) * self.repetition_rate)

    @property
    def is_degenerate(self) -> bool:
        omegas = self.emission_centers
        return max(omegas) - min(omegas) <= 1e-9 * max(omegas)

    @property
    def common_filter_bandwidth(self) -> Optional[float]:
        """
        The filter bandwidth shared by the three modes, or None if unfiltered or unequal.
        """
        if self.filters is None:
            return None
        widths = {f.sigma_f for f in self.filters}
        return widths.pop() if len(widths) == 1 else None

    def with_changes(self, **changes: Any) -> "ProcessConfig":
        return replace(self, **changes)

    def with_sigma(self, sigma: float) -> "ProcessConfig":
        return replace(self, pump=PumpEnvelope(self.pump.omega_p0, sigma))

    def with_filter_bandwidth(self, sigma_f: float) -> "ProcessConfig":
        filters = tuple(SpectralFilter(w, sigma_f) for w in self.emission_centers)
        return replace(self, filters=filters)


@dataclass(frozen=True)
class CenterProperties:
    """
    Mode and material properties frozen at the pump and emission central frequencies.
    """

    k_prime: Tuple[float, float, float, float]
    """Group slownesses (p, r, s, i) in s/m."""

    index: Tuple[float, float, float, float]
    """Core material refractive indices (p, r, s, i)."""

    coefficients: NonlinearCoefficients

    @property
    def gamma(self) -> float:
        return self.coefficients.gamma


@lru_cache(maxsize=64)
def center_properties(config: ProcessConfig,
                      numerics: NumericsConfig = default_numerics) -> CenterProperties:
    """
    Evaluate group slownesses, indices and nonlinear coefficients at the design centers.

    :raises ModeNotGuided: If a mode is not guided at its center.
    """
    fiber = config.fiber
    omega_p = config.pump.omega_p0
    k_p = group_slowness(fiber, ModeId.HE12, omega_p, numerics=numerics)
    k_r, k_s, k_i = (group_slowness(fiber, ModeId.HE11, w, numerics=numerics)
                     for w in config.emission_centers)
    k_prime = (k_p, k_r, k_s, k_i)
    n_p, n_r, n_s, n_i = (float(refractive_index_at_omega(fiber.core, w))
                          for w in (omega_p,) + config.emission_centers)
    index = (n_p, n_r, n_s, n_i)
    coefficients = compute_coefficients(fiber, (omega_p,) + config.emission_centers, index,
                                        config.chi3, numerics=numerics)
    logger.info("Center properties: k'=%s s/m, gamma=%.6g 1/(W m)",
                ", ".join(f"{k:.9e}" for k in k_prime), coefficients.gamma)
    return CenterProperties(k_prime=k_prime, index=index, coefficients=coefficients)


class ProcessModel:
    """
    Tabulated dispersion of a design used to evaluate phasemismatch on dense frequency grids.

    The emitted HE11 mode is tabulated over the centers widened by
    `numerics.emission_band_fraction` (clipped to the material validity) and the pump
    HE12 mode over `omega_p0 +/- max(1.1 pump_span, 1e-3 omega_p0)`. The nonlinear phase
    uses the pulse peak power unless `peak_power` is given.
    """

    def __init__(self, config: ProcessConfig, pump_span: float, *,
                 peak_power: Optional[float] = None,
                 numerics: NumericsConfig = default_numerics) -> None:
        self.config = config
        self.numerics = numerics
        self.centers = center_properties(config, numerics)

        lo_lam, hi_lam = config.fiber.core.validity
        omega_floor = float(wavelength_to_omega(hi_lam)) * (1 + 1e-9)
        omega_ceiling = float(wavelength_to_omega(lo_lam)) * (1 - 1e-9)
        fraction = numerics.emission_band_fraction
        emitted = config.emission_centers
        self.emission_band = (max(omega_floor, min(emitted) * (1 - fraction)),
                              min(omega_ceiling, max(emitted) * (1 + fraction)))
        self.emission: ModeDispersion = tabulate_dispersion(
            config.fiber, ModeId.HE11, *self.emission_band, numerics=numerics)

        omega_p0 = config.pump.omega_p0
        half = max(1.1 * pump_span, 1e-3 * omega_p0)
        self.pump_band = (omega_p0 - half, omega_p0 + half)
        self.pump: ModeDispersion = tabulate_dispersion(
            config.fiber, ModeId.HE12, *self.pump_band, numerics=numerics)

        if config.nonlinear_phase:
            power = config.peak_power if peak_power is None else peak_power
            self.phi_nl = nonlinear_phase(self.centers.coefficients, power)
        else:
            self.phi_nl = 0.0

    def _check(self, omega: np.ndarray, band: Tuple[float, float], what: str) -> None:
        lo, hi = band
        if omega.size and (omega.min() < lo or omega.max() > hi):
            raise GridTruncation(
                f"{what} frequencies [{omega.min():.6e}, {omega.max():.6e}] rad/s leave the "
                f"tabulated band [{lo:.6e}, {hi:.6e}] rad/s; reduce the detuning extent"
            )

    def delta_k(self, omega_r: ArrayLike, omega_s: ArrayLike, omega_i: ArrayLike) -> np.ndarray:
        """
        Return the phasemismatch (rad/m) with the pump frequency fixed by energy conservation.
        """
        w_r, w_s, w_i = (np.asarray(w, dtype=float) for w in (omega_r, omega_s, omega_i))
        w_p = w_r + w_s + w_i
        for w in (w_r, w_s, w_i):
            self._check(w, self.emission_band, "Emission")
        self._check(w_p, self.pump_band, "Pump")
        return (self.pump.k_at(w_p) - self.emission.k_at(w_r) - self.emission.k_at(w_s)
                - self.emission.k_at(w_i) + self.phi_nl)

    def delta_k_cw(self, omega_r: ArrayLike, omega_s: ArrayLike) -> np.ndarray:
        """
        Return the monochromatic-pump phasemismatch with omega_i = omega_p0 - omega_r - omega_s.
        """
        w_r = np.asarray(omega_r, dtype=float)
        w_s = np.asarray(omega_s, dtype=float)
        return self.delta_k(w_r, w_s, self.config.pump.omega_p0 - w_r - w_s)

    def h(self, omega_r: ArrayLike, omega_s: ArrayLike, omega_i: ArrayLike) -> np.ndarray:
        """
        Return prod_mu k'_mu omega_mu / n_mu^2 with per-frequency slowness and index.
        """
        core = self.config.fiber.core
        result = np.ones(np.broadcast(omega_r, omega_s, omega_i).shape)
        for omega in (omega_r, omega_s, omega_i):
            w = np.asarray(omega, dtype=float)
            result = result * (self.emission.k_prime_at(w) * w
                               / np.asarray(refractive_index_at_omega(core, w)) ** 2)
        return result
