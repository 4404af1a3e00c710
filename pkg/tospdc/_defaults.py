from typing import Tuple

__all__ = ("Defaults",)


class Defaults:
    """
    Physical defaults shared by the library and the command-line tool.
    """

    # Third-order susceptibility of fused silica (m^2/V^2), equivalent to n2 ~ 1.3e-20 m^2/W.
    # Calibrated so the built-in designs emit 3.8 and 0.34 triplets/s; rates scale with its
    # square.
    chi3: float = 0.97e-22

    # Pump repetition rate (Hz). Only the peak power, and through it the nonlinear
    # phase, depends on it.
    repetition_rate: float = 1.0e6

    # Refractive index of the air cladding.
    cladding_index: float = 1.0

    # Default search bracket (m) for the degenerate phasematching radius.
    radius_bracket: Tuple[float, float] = (0.25e-6, 0.60e-6)

    # Phi value above which the long-fiber asymptote is reached (within 3%).
    regime_threshold: float = 100.0

    # Relative half-width of the window around the regime threshold length in which
    # neither asymptote is trusted.
    regime_margin: float = 0.2
