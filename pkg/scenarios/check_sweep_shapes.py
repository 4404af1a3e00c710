import numpy as np
import vedro
from vedro import params

from contexts import designed_source
from tospdc import FluxMethod, SweepParameter, sweep


def linear_fit_residual(x, y, through_origin=False):
    x = np.asarray(x)
    y = np.asarray(y)
    if through_origin:
        fitted = x * (x @ y) / (x @ x)
    else:
        fitted = np.polyval(np.polyfit(x, y, 1), x)
    return float(np.max(np.abs(y - fitted)) / np.max(np.abs(y)))


class Scenario(vedro.Scenario):
    subject = "check flux dependence on {parameter}"

    @params(SweepParameter.SIGMA, list(np.linspace(11.77e9, 117.7e9, 5)), 0.02)
    @params(SweepParameter.LENGTH, list(np.linspace(0.01, 0.10, 5)), 0.02)
    @params(SweepParameter.POWER, list(np.linspace(0.001, 0.2, 5)), 0.01)
    def __init__(self, parameter, values, tolerance):
        self.parameter = parameter
        self.values = values
        self.tolerance = tolerance

    def given_nondegenerate_design(self):
        self.design = designed_source("nondegenerate")

    def when_user_sweeps_the_numeric_flux(self):
        rows = sweep(self.design.config, self.parameter, self.values, [FluxMethod.NUMERIC],
                     numerics=self.design.numerics)
        self.fluxes = np.array([row.results[0].n for row in rows])

    def then_flux_should_follow_the_expected_law(self):
        if self.parameter == SweepParameter.SIGMA:
            spread = (self.fluxes.max() - self.fluxes.min()) / self.fluxes.mean()
            assert spread <= self.tolerance
        else:
            through_origin = self.parameter == SweepParameter.POWER
            residual = linear_fit_residual(self.values, self.fluxes, through_origin)
            assert residual <= self.tolerance
