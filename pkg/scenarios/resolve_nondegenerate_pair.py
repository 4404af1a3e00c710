import vedro

from tospdc import FiberSpec
from tospdc.dispersion import omega_to_wavelength, wavelength_to_omega
from tospdc.phasematching import find_phasematching_radius, resolve_emission_pair


class Scenario(vedro.Scenario):
    subject = "resolve non-degenerate pair for a 1.596 um idler"

    def given_fiber_and_fixed_frequencies(self):
        self.fiber = FiberSpec(radius=find_phasematching_radius(1.596e-6))
        self.omega_p = float(wavelength_to_omega(0.531e-6))
        self.omega_i = float(wavelength_to_omega(1.596e-6))

    def when_user_resolves_the_pair(self):
        self.omega_r, self.omega_s = resolve_emission_pair(self.fiber, self.omega_p,
                                                           self.omega_i)

    def then_signal_one_should_be_at_1529_nm(self):
        assert abs(omega_to_wavelength(self.omega_r) * 1e9 - 1529) <= 3

    def and_then_signal_two_should_be_at_1659_nm(self):
        assert abs(omega_to_wavelength(self.omega_s) * 1e9 - 1659) <= 3
