import numpy as np
import vedro

from contexts import designed_source
from tospdc import jsa_slice_rotated


class Scenario(vedro.Scenario):
    subject = "slice joint spectrum of the degenerate design at fixed nu_plus"

    def given_degenerate_design(self):
        self.design = designed_source("degenerate")
        self.axis = np.linspace(-50e12, 50e12, 129)

    def when_user_slices_at_three_nu_plus_values(self):
        self.slices = {
            nu_plus: jsa_slice_rotated(self.design.config, nu_plus, self.axis, self.axis,
                                       numerics=self.design.numerics).intensity
            for nu_plus in (-15e9, 0.0, 15e9)
        }

    def then_negative_slice_should_peak_below_central_slice(self):
        assert self.slices[-15e9].max() < self.slices[0.0].max()

    def and_then_positive_slice_should_be_annular(self):
        plane = self.slices[15e9]
        center = plane[64, 64]
        assert center < 0.95 * plane.max()
