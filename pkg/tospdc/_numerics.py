from dataclasses import dataclass, replace

from ._errors import DesignError

__all__ = ("NumericsConfig", "default_numerics",)


@dataclass(frozen=True)
class NumericsConfig:
    """
    Holds the grid sizes and tolerances used by the numerical procedures.

    Every solver and integrator accepts an instance of this class; the module-level
    `default_numerics` instance is used when none is given.
    """

    root_scan_points: int = 2000
    """
    Number of uniform effective-index samples used to bracket the roots of the
    characteristic equation.
    """

    root_xtol: float = 1e-13
    """
    Absolute tolerance on the effective index when polishing a bracketed root.
    """

    profile_points: int = 512
    """
    Samples per axis of a transverse mode profile.
    """

    profile_span_radii: float = 4.0
    """
    Half-width of the profile window, in core radii.
    """

    map_profile_points: int = 256
    """
    Samples per axis of the profiles used when gamma is evaluated over whole maps.
    """

    verify_profiles: bool = False
    """
    Whether every profile is checked against a doubled-resolution evaluation.
    """

    profile_tolerance: float = 1e-3
    """
    Maximum relative drift of the raw profile norm under grid doubling.
    """

    fd_relative_step: float = 1e-5
    """
    Relative frequency step of the central difference used for group slowness.
    """

    table_relative_spacing: float = 1e-3
    """
    Relative frequency spacing of tabulated mode dispersion.
    """

    emission_band_fraction: float = 0.25
    """
    Relative half-width of the emission band covered by dispersion tables.
    """

    radius_scan_points: int = 41
    """
    Number of radii scanned to bracket a phasematching radius.
    """

    contour_scan_points: int = 400
    """
    Number of detuning samples scanned to bracket phasematched detunings.
    """

    phasematch_tolerance: float = 10.0
    """
    Maximum phasemismatch (rad/m) accepted for a reported phasematching point.
    """

    jsa_points: int = 128
    """
    Samples per axis of a sampled joint spectral amplitude.
    """

    jsa_rel_tol: float = 0.01
    """
    Relative change of the total joint spectral intensity under grid refinement above
    which a sampled amplitude is rejected.
    """

    boundary_fraction: float = 1e-4
    """
    Maximum boundary intensity, relative to the peak, of a spectrum that is marginalized.
    """

    flux_plus_points: int = 17
    """
    Samples along nu_plus in the pulsed flux quadrature.
    """

    flux_samples_per_lobe: int = 8
    """
    Minimum samples per sinc lobe along each in-plane axis.
    """

    flux_lobes: float = 40.0
    """
    Number of sinc lobes kept on each side of the phasematching surface.
    """

    flux_min_plane_points: int = 65
    """
    Smallest in-plane grid used by the flux quadrature.
    """

    flux_max_plane_points: int = 4097
    """
    Largest in-plane grid the flux refinement may reach.
    """

    flux_rel_tol: float = 0.01
    """
    Relative change under grid doubling below which a flux value is accepted.
    """

    threads: int = 1
    """
    Worker threads used by sweeps and maps.
    """

    def scaled(self, factor: float) -> "NumericsConfig":
        """
        Return a copy with every grid size multiplied by `factor`.

        :param factor: Positive scale factor applied to sample counts.
        :return: A new `NumericsConfig`.
        :raises DesignError: If the factor is not positive.
        """
        if factor <= 0:
            raise DesignError(f"Grid scale must be positive, got {factor}")

        def scale(n: int, minimum: int = 3) -> int:
            return max(minimum, int(round(n * factor)))

        return replace(
            self,
            root_scan_points=scale(self.root_scan_points, 100),
            profile_points=scale(self.profile_points, 16),
            map_profile_points=scale(self.map_profile_points, 16),
            contour_scan_points=scale(self.contour_scan_points, 16),
            jsa_points=scale(self.jsa_points, 8),
            flux_plus_points=scale(self.flux_plus_points, 5) | 1,
            flux_min_plane_points=scale(self.flux_min_plane_points, 9) | 1,
            flux_max_plane_points=scale(self.flux_max_plane_points, 65) | 1,
        )


default_numerics = NumericsConfig()
