__all__ = ("TospdcError", "InputError", "NumericalError",
           "OutOfValidityRange", "GridMismatch", "DegenerateDesign", "DesignError",
           "ModeNotGuided", "NoSignChange", "GridTooCoarse", "DegenerateOverlap",
           "GridTruncation", "NonConvergent", "DegenerateDivergence",
           "RegimeMismatch",)


class TospdcError(Exception):
    """
    Base class for every error raised by the package.
    """


class InputError(TospdcError, ValueError):
    """
    Raised when a request cannot be honoured because of the values it was given.
    """


class NumericalError(TospdcError, ArithmeticError):
    """
    Raised when a well-formed request fails inside a numerical procedure.
    """


class OutOfValidityRange(InputError):
    """
    Raised when a wavelength lies outside the validity range of a dispersion model.
    """

    def __init__(self, wavelength: float, validity: "tuple[float, float]") -> None:
        self.wavelength = wavelength
        self.validity = validity
        lo, hi = validity
        super().__init__(
            f"Wavelength {wavelength * 1e6:.6g} um is outside the dispersion validity range "
            f"[{lo * 1e6:.6g}, {hi * 1e6:.6g}] um"
        )


class GridMismatch(InputError):
    """
    Raised when mode profiles sampled on different grids are combined.
    """


class DegenerateDesign(InputError):
    """
    Raised when a closed-form expression is requested for frequency-degenerate emission.
    """


class DesignError(InputError):
    """
    Raised when a design file or process configuration is malformed.
    """


class ModeNotGuided(NumericalError):
    """
    Raised when the requested fiber mode has no guided solution.
    """

    def __init__(self, mode: str, radius: float, omega: float, found: int) -> None:
        self.mode = mode
        self.radius = radius
        self.omega = omega
        self.found = found
        super().__init__(
            f"Mode {mode} is not guided for radius {radius * 1e6:.6g} um at "
            f"omega {omega:.6e} rad/s ({found} guided HE root(s) found)"
        )


class NoSignChange(NumericalError):
    """
    Raised when a root bracket does not straddle a sign change.
    """


class GridTooCoarse(NumericalError):
    """
    Raised when a sampled profile or spectrum is not converged under grid refinement.
    """


class DegenerateOverlap(NumericalError):
    """
    Raised when a transverse overlap integral is (nearly) zero.
    """


class GridTruncation(NumericalError):
    """
    Raised when a sampled spectrum has not decayed at the grid boundary.
    """


class NonConvergent(NumericalError):
    """
    Raised when an integral does not converge before the maximum grid size is reached.
    """


class DegenerateDivergence(NumericalError):
    """
    Raised when the characteristic length diverges because group slownesses coincide.
    """


class RegimeMismatch(UserWarning):
    """
    Emitted when an asymptotic flux form is used outside (or close to the edge of) its regime.
    """
