from enum import Enum

__all__ = ("MapKind", "JsaView",)


class MapKind(str, Enum):
    """
    Defines the design maps exported by the `maps` subcommand.

    - `DEG_CURVE`: Degenerate wavelength and gamma versus phasematching radius.
    - `CONTOUR_VS_PUMP`: Phasematched detunings versus pump frequency.
    - `CONTOUR_VS_RADIUS`: Phasematched detunings versus core radius.
    - `GAMMA_MAP`: Gamma over the (pump frequency, detuning) plane.
    - `DISPERSION`: Mode dispersion table of a single fiber mode.
    """

    DEG_CURVE = "deg-curve"
    CONTOUR_VS_PUMP = "contour-vs-pump"
    CONTOUR_VS_RADIUS = "contour-vs-radius"
    GAMMA_MAP = "gamma-map"
    DISPERSION = "dispersion"

    def __str__(self) -> str:
        return self.value


class JsaView(str, Enum):
    """
    Defines the joint-spectrum datasets exported by the `jsa` subcommand.

    - `SLICES`: Intensity over (nu_A, nu_B) at fixed nu_plus values.
    - `AXIS`: Intensity along nu_plus with nu_A = nu_B = 0.
    - `MARGINALS`: Two-photon and single-photon marginal spectra.
    - `FILTERED`: Single-photon spectra after Gaussian filtering.
    - `PLANES`: Pump envelope, phasematching and joint intensity on the coordinate planes.
    """

    SLICES = "slices"
    AXIS = "axis"
    MARGINALS = "marginals"
    FILTERED = "filtered"
    PLANES = "planes"

    def __str__(self) -> str:
        return self.value
