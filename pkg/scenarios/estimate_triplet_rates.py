import vedro

from contexts import designed_source, relative_gap
from tospdc import flux_pulsed_numeric


class Scenario(vedro.Scenario):
    subject = "estimate emitted triplet rates of both built-in designs"

    def given_degenerate_design(self):
        self.degenerate = designed_source("degenerate")

    def given_nondegenerate_design(self):
        self.nondegenerate = designed_source("nondegenerate")

    def when_user_integrates_both_rates(self):
        self.n_deg = flux_pulsed_numeric(self.degenerate.config,
                                         numerics=self.degenerate.numerics).n
        self.n_nondeg = flux_pulsed_numeric(self.nondegenerate.config,
                                            numerics=self.nondegenerate.numerics).n

    def then_degenerate_rate_should_be_near_3_8_per_second(self):
        assert relative_gap(self.n_deg, 3.80) <= 0.5

    def and_then_nondegenerate_rate_should_be_near_0_34_per_second(self):
        assert relative_gap(self.n_nondeg, 0.34) <= 0.5

    def and_then_their_ratio_should_be_near_11(self):
        assert relative_gap(self.n_deg / self.n_nondeg, 11.2) <= 0.25
