import vedro

from contexts import designed_source, relative_gap
from tospdc import flux_cw, flux_pulsed_numeric


class Scenario(vedro.Scenario):
    subject = "approach continuous-wave flux as the pump narrows"

    def given_degenerate_design(self):
        self.design = designed_source("degenerate")
        self.sigmas = [10e9, 3e9, 1e9]

    def when_user_narrows_the_pump(self):
        numerics = self.design.numerics
        self.cw = flux_cw(self.design.config, numerics=numerics).n
        self.gaps = [relative_gap(flux_pulsed_numeric(self.design.config.with_sigma(s),
                                                      numerics=numerics).n, self.cw)
                     for s in self.sigmas]

    def then_gap_should_shrink_monotonically(self):
        assert self.gaps[0] > self.gaps[1] > self.gaps[2]

    def and_then_gap_at_1_ghz_should_be_below_1_percent(self):
        assert self.gaps[-1] < 0.01
