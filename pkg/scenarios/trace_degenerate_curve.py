import numpy as np
import vedro

from tospdc import degenerate_wavelength_curve


class Scenario(vedro.Scenario):
    subject = "trace degenerate wavelength over 0.30-0.48 um radii"

    def given_radii(self):
        self.radii = np.linspace(0.30e-6, 0.48e-6, 50)

    def when_user_traces_the_curve(self):
        self.curve = degenerate_wavelength_curve(self.radii)

    def then_every_radius_should_phasematch(self):
        assert self.curve.skipped == ()
        assert len(self.curve.points) == 50

    def and_then_endpoints_should_match(self):
        wavelengths = [p.wavelength * 1e6 for p in self.curve.points]
        assert abs(wavelengths[0] - 1.24) <= 0.05
        assert abs(wavelengths[-1] - 1.93) <= 0.05

    def and_then_curve_should_be_monotone(self):
        wavelengths = np.array([p.wavelength for p in self.curve.points])
        assert np.all(np.diff(wavelengths) > 0)
