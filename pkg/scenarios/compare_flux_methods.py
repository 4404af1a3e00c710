import vedro
from vedro import params

from contexts import designed_source, relative_gap
from tospdc import FluxMethod, SweepParameter, sweep


class Scenario(vedro.Scenario):
    subject = "compare closed-form and numeric flux along {parameter}"

    @params(SweepParameter.SIGMA, [11.77e9, 23.5e9, 58.85e9, 117.7e9])
    @params(SweepParameter.LENGTH, [0.01, 0.04, 0.07, 0.10])
    @params(SweepParameter.POWER, [0.001, 0.05, 0.1, 0.2])
    def __init__(self, parameter, values):
        self.parameter = parameter
        self.values = values

    def given_nondegenerate_design(self):
        self.design = designed_source("nondegenerate")

    def when_user_sweeps_both_methods(self):
        self.rows = sweep(self.design.config, self.parameter, self.values,
                          [FluxMethod.NUMERIC, FluxMethod.ANALYTIC],
                          numerics=self.design.numerics)

    def then_methods_should_agree_within_5_percent(self):
        for row in self.rows:
            numeric, analytic = row.results
            assert relative_gap(analytic.n, numeric.n) < 0.05, row.value
