import vedro
from vedro import params

from tospdc import find_phasematching_radius


class Scenario(vedro.Scenario):
    subject = "find phasematching radius for degenerate emission at {wavelength_um} um"

    @params(1.350, 0.331)
    @params(1.596, 0.395)
    @params(1.800, 0.448)
    def __init__(self, wavelength_um, radius_um):
        self.wavelength_um = wavelength_um
        self.radius_um = radius_um

    def when_user_searches_the_radius(self):
        self.result = find_phasematching_radius(self.wavelength_um * 1e-6)

    def then_it_should_return_reference_radius(self):
        assert abs(self.result * 1e6 - self.radius_um) <= 0.015
