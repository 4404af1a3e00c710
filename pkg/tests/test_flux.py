import csv
import io
import warnings
from dataclasses import replace

import numpy as np
import pytest
from baby_steps import given, then, when
from scipy.constants import hbar, pi

from tospdc import (
    DegenerateDesign,
    DegenerateDivergence,
    DesignError,
    FluxMethod,
    NonConvergent,
    Regime,
    RegimeMismatch,
    SweepParameter,
)
from tospdc.designs import preset
from tospdc.flux import (
    CenterProperties,
    FluxResult,
    SweepRow,
    TauCoefficients,
    braced_factor,
    center_properties,
    characteristic_length,
    conversion_efficiency,
    design_report,
    eta_cw,
    flux_analytic,
    flux_asymptotic,
    flux_by_method,
    flux_cw,
    flux_pulsed_numeric,
    h_center,
    h_factor,
    phi_parameter,
    pump_photon_rate,
    sweep,
    tau_coefficients,
    write_sweep_csv,
)
from tospdc.nonlinearity import NonlinearCoefficients

COEFFICIENTS = NonlinearCoefficients(gamma=0.05, gamma_p=0.2, gamma_pr=0.1, gamma_ps=0.1,
                                     gamma_pi=0.1, a_eff=2e-12, a_eff_p=1e-12,
                                     a_eff_pmu=(1e-12, 1e-12, 1e-12))


def synthetic_centers(k_prime=(4.85e-9, 4.80e-9, 4.85e-9, 4.90e-9)) -> CenterProperties:
    # Pump slowness equal to the mean emitted slowness keeps the walk-off times centered
    return CenterProperties(k_prime=k_prime, index=(1.46, 1.444, 1.443, 1.442),
                            coefficients=COEFFICIENTS)


def test_braced_factor_limits():
    with when:
        at_zero = braced_factor(0.0)
        series = braced_factor(0.999e-6)
        closed = braced_factor(1.001e-6)
        large = braced_factor(100.0)

    with then:
        assert at_zero == 4.0
        assert series == pytest.approx(closed, rel=1e-6)
        assert large == pytest.approx(2 * np.sqrt(pi / 100.0), rel=0.03)


def test_braced_factor_rejects_negative_phi():
    with when, pytest.raises(DesignError) as exc:
        braced_factor(-1.0)

    with then:
        assert "non-negative" in str(exc.value)


def test_phi_vanishes_without_walk_off():
    with when:
        phi = phi_parameter(TauCoefficients(0.0, 0.0, 0.0), sigma=23.5e9, sigma_f=15e12)

    with then:
        assert phi == 0.0


def test_phi_tracks_the_characteristic_length(nondegenerate_config):
    with given:
        centers = synthetic_centers()
        sigma_f = 100 * nondegenerate_config.pump.sigma

    with when:
        tau = tau_coefficients(nondegenerate_config, centers)
        phi = phi_parameter(tau, nondegenerate_config.pump.sigma, sigma_f)
        l0 = characteristic_length(nondegenerate_config, sigma_f, centers)

    with then:
        assert phi == pytest.approx((nondegenerate_config.length / l0) ** 2, rel=1e-3)


def test_characteristic_length_diverges_for_equal_slowness(nondegenerate_config):
    with given:
        centers = synthetic_centers((4.9e-9, 4.8e-9, 4.8e-9, 4.8e-9))

    with when, pytest.raises(DegenerateDivergence) as exc:
        characteristic_length(nondegenerate_config, 15e12, centers)

    with then:
        assert "diverges" in str(exc.value)


def test_flux_quadruples_with_gamma(nondegenerate_config):
    with given:
        centers = synthetic_centers()
        doubled = replace(centers, coefficients=replace(COEFFICIENTS,
                                                        gamma=2 * COEFFICIENTS.gamma))

    with when:
        base = flux_analytic(nondegenerate_config, centers)
        boosted = flux_analytic(nondegenerate_config, doubled)

    with then:
        assert boosted.n == pytest.approx(4 * base.n, rel=1e-12)
        assert boosted.method == FluxMethod.ANALYTIC


def test_flux_is_linear_in_power(nondegenerate_config):
    with given:
        centers = synthetic_centers()
        half = nondegenerate_config.with_changes(average_power=0.1)

    with when:
        full_flux = flux_analytic(nondegenerate_config, centers)
        half_flux = flux_analytic(half, centers)

    with then:
        assert half_flux.n == pytest.approx(full_flux.n / 2, rel=1e-12)
        assert half_flux.eta == pytest.approx(full_flux.eta, rel=1e-12)


def test_asymptotes_match_the_closed_form(nondegenerate_config):
    with given:
        centers = synthetic_centers()
        l0 = characteristic_length(nondegenerate_config, 15e12, centers)
        long_config = nondegenerate_config.with_changes(length=1000 * l0)
        short_config = nondegenerate_config.with_changes(length=1e-3 * l0)

    with when:
        long_flux = flux_asymptotic(long_config, Regime.LONG, centers)
        short_flux = flux_asymptotic(short_config, Regime.SHORT, centers)

    with then:
        assert long_flux.n == pytest.approx(flux_analytic(long_config, centers).n, rel=1e-2)
        assert short_flux.n == pytest.approx(flux_analytic(short_config, centers).n, rel=1e-3)
        assert long_flux.diagnostics["regime"] == "long"


def test_asymptote_outside_its_regime_warns(nondegenerate_config):
    with given:
        centers = synthetic_centers()
        l0 = characteristic_length(nondegenerate_config, 15e12, centers)
        config = nondegenerate_config.with_changes(length=l0)

    with when, pytest.warns(RegimeMismatch) as record:
        flux_asymptotic(config, Regime.LONG, centers)

    with then:
        assert "crossover" in str(record[0].message)


def test_asymptote_inside_its_regime_is_silent(nondegenerate_config):
    with given:
        centers = synthetic_centers()
        l0 = characteristic_length(nondegenerate_config, 15e12, centers)
        config = nondegenerate_config.with_changes(length=0.01 * l0)

    with when, warnings.catch_warnings():
        warnings.simplefilter("error", RegimeMismatch)
        result = flux_asymptotic(config, Regime.SHORT, centers)

    with then:
        assert result.n > 0


def test_closed_form_rejects_degenerate_designs(degenerate_config):
    with given:
        config = degenerate_config.with_filter_bandwidth(15e12)

    with when, pytest.raises(DegenerateDesign) as exc:
        flux_analytic(config, synthetic_centers())

    with then:
        assert "numeric" in str(exc.value)


def test_closed_form_needs_common_filters(nondegenerate_config):
    with given:
        config = nondegenerate_config.with_changes(filters=None)

    with when, pytest.raises(DesignError) as exc:
        flux_analytic(config, synthetic_centers())

    with then:
        assert "filter" in str(exc.value)


def test_pump_photon_rate_and_efficiency():
    with given:
        omega_p = 3.5e15

    with when:
        rate = pump_photon_rate(0.2, omega_p)

    with then:
        assert rate == pytest.approx(0.2 / (hbar * omega_p))
        assert conversion_efficiency(3.8, 0.2, omega_p) == pytest.approx(3.8 / rate)
        assert conversion_efficiency(0.0, 0.0, omega_p) == 0.0


def test_h_center(nondegenerate_config):
    with given:
        centers = synthetic_centers()

    with when:
        h0 = h_center(nondegenerate_config, centers)

    with then:
        expected = np.prod([k * w / n ** 2 for k, w, n in zip(
            centers.k_prime[1:], nondegenerate_config.emission_centers, centers.index[1:])])
        assert h0 == pytest.approx(expected, rel=1e-14)


def test_negative_flux_is_rejected():
    with when, pytest.raises(NonConvergent) as exc:
        FluxResult(n=-1.0, eta=0.0, method=FluxMethod.NUMERIC)

    with then:
        assert "Negative" in str(exc.value)


def test_write_sweep_csv():
    with given:
        rows = [SweepRow(value=0.1, results=(
            FluxResult(n=1.5, eta=2e-18, method=FluxMethod.NUMERIC),
            FluxResult(n=1.6, eta=2.1e-18, method=FluxMethod.ANALYTIC)))]
        stream = io.StringIO()

    with when:
        write_sweep_csv(rows, stream)

    with then:
        lines = list(csv.reader(io.StringIO(stream.getvalue())))
        assert lines[0] == ["param_value", "N_triplets_per_s", "eta", "method"]
        assert [line[3] for line in lines[1:]] == ["numeric", "analytic"]
        assert float(lines[1][0]) == pytest.approx(0.1)
        assert float(lines[2][1]) == pytest.approx(1.6)
        assert float(lines[2][2]) == pytest.approx(2.1e-18)


def test_power_sweep_through_the_origin(nondegenerate_config, numerics):
    with given:
        values = [0.0, 0.05, 0.1]

    with when:
        rows = sweep(nondegenerate_config, SweepParameter.POWER, values, [FluxMethod.ANALYTIC],
                     numerics=numerics)

    with then:
        assert [row.value for row in rows] == values
        fluxes = [row.results[0].n for row in rows]
        assert fluxes[0] == 0.0
        assert fluxes[2] == pytest.approx(2 * fluxes[1], rel=1e-9)


def test_numeric_flux_agrees_with_closed_form_for_short_fibers(nondegenerate_config, numerics):
    with given:
        config = nondegenerate_config.with_changes(length=1e-3)

    with when:
        numeric = flux_pulsed_numeric(config, numerics=numerics)
        analytic = flux_analytic(config, numerics=numerics)

    with then:
        assert numeric.method == FluxMethod.NUMERIC
        assert numeric.diagnostics["relative_change"] < numerics.flux_rel_tol
        assert numeric.n == pytest.approx(analytic.n, rel=0.05)


def test_design_report(nondegenerate_config, numerics):
    with when:
        report = design_report(nondegenerate_config, numerics=numerics)

    with then:
        assert report["degenerate"] is False
        assert report["gamma_per_W_m"] > 0
        assert len(report["tau_s"]) == 3
        assert report["phi"] is not None and report["phi"] > 0
        assert report["lambda_p_um"] == pytest.approx(0.531)


def test_cw_flux(nondegenerate_config, numerics):
    with given:
        config = nondegenerate_config.with_changes(length=1e-3)

    with when:
        result = flux_cw(config, numerics=numerics)

    with then:
        assert result.method == FluxMethod.CW
        assert result.n > 0
        assert eta_cw(config, numerics=numerics) == pytest.approx(result.eta, rel=1e-12)


def test_h_factor_at_centers(nondegenerate_config, numerics):
    with when:
        h = h_factor(nondegenerate_config, nondegenerate_config.centers, numerics=numerics)

    with then:
        centers = center_properties(nondegenerate_config, numerics)
        assert h == pytest.approx(h_center(nondegenerate_config, centers), rel=1e-12)


def test_flux_by_method_dispatches_to_closed_form(degenerate_config):
    with given:
        config = degenerate_config.with_filter_bandwidth(15e12)

    with when, pytest.raises(DegenerateDesign) as exc:
        flux_by_method(config, FluxMethod.ASYMPTOTIC, Regime.SHORT)

    with then:
        assert "non-degenerate" in str(exc.value)


def test_narrower_filters_emit_less(nondegenerate_config):
    with given:
        centers = synthetic_centers()
        bandwidths = [50e12, 15e12, 5e12, 1e12]

    with when:
        fluxes = [flux_analytic(nondegenerate_config.with_filter_bandwidth(b), centers).n
                  for b in bandwidths]

    with then:
        assert np.all(np.diff(fluxes) < 0)


def test_nondegenerate_preset_rate():
    with given:
        design = preset("nondegenerate")

    with when:
        result = flux_analytic(design.config, numerics=design.numerics)

    with then:
        assert result.n == pytest.approx(0.34, rel=0.5)
