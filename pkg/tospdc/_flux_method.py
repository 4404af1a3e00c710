from enum import Enum

__all__ = ("FluxMethod", "Regime",)


class FluxMethod(str, Enum):
    """
    Defines how an emitted flux value was obtained.

    This enumeration includes the following methods:
    - `NUMERIC`: Triple quadrature of the pulsed-pump flux integral.
    - `CW`: Double quadrature in the monochromatic-pump limit.
    - `ANALYTIC`: Closed form based on the linearized phasemismatch.
    - `ASYMPTOTIC`: Long- or short-fiber limit of the closed form.
    """

    NUMERIC = "numeric"
    CW = "cw"
    ANALYTIC = "analytic"
    ASYMPTOTIC = "asymptotic"

    def __str__(self) -> str:
        return self.value


class Regime(str, Enum):
    """
    Selects the fiber-length regime of the asymptotic flux expression.

    - `LONG`: L well above the characteristic length, flux linear in L.
    - `SHORT`: L well below the characteristic length, flux quadratic in L.
    """

    LONG = "long"
    SHORT = "short"

    def __str__(self) -> str:
        return self.value
