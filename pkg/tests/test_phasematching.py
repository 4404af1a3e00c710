import io
from dataclasses import replace

import numpy as np
import pytest
from baby_steps import given, then, when

from tospdc import DesignError, FiberSpec, NoSignChange
from tospdc.dispersion import omega_to_wavelength
from tospdc.phasematching import (
    DegenerateCurve,
    DegeneratePoint,
    PhasematchPoint,
    ProcessFrequencies,
    degenerate_wavelength_curve,
    delta_k,
    emission_contour_vs_pump,
    find_phasematching_radius,
    find_vertex_pump,
    find_vertex_radius,
    gamma_map,
    phasematch_mismatch,
    resolve_emission_pair,
    write_contour_csv,
    write_degenerate_curve_csv,
    write_gamma_map_csv,
)

from .conftest import omega_of


def test_energy_conservation_is_enforced():
    with when, pytest.raises(DesignError) as exc:
        ProcessFrequencies(omega_p=3.0e15, omega_r=1.0e15, omega_s=1.0e15, omega_i=0.9e15)

    with then:
        assert "Energy is not conserved" in str(exc.value)


def test_from_detuning():
    with when:
        freqs = ProcessFrequencies.from_detuning(3.5e15, 1.2e15, 1e13)

    with then:
        assert freqs.delta == pytest.approx(1e13)
        assert freqs.omega_r > freqs.omega_s
        assert sum(freqs.emitted) == pytest.approx(freqs.omega_p, rel=1e-15)


def test_phasematching_radius_for_1596nm(numerics):
    with when:
        radius = find_phasematching_radius(1.596e-6, numerics=numerics)

    with then:
        assert radius == pytest.approx(0.395e-6, abs=0.015e-6)
        fiber = FiberSpec(radius=radius)
        assert abs(phasematch_mismatch(fiber, 1.596e-6, numerics=numerics)) < 1.0


def test_vertex_pump_of_degenerate_design(numerics):
    with given:
        omega = omega_of(1.596)
        fiber = FiberSpec(radius=find_phasematching_radius(1.596e-6, numerics=numerics))

    with when:
        omega_p = find_vertex_pump(fiber, omega, numerics=numerics)

    with then:
        assert omega_p == pytest.approx(3 * omega, rel=1e-5)


def test_radius_bracket_outside_limits(numerics):
    with when, pytest.raises(DesignError) as exc:
        find_phasematching_radius(1.596e-6, (0.1e-6, 0.5e-6), numerics=numerics)

    with then:
        assert "bracket" in str(exc.value)


def test_radius_bracket_without_root(numerics):
    with when, pytest.raises(NoSignChange) as exc:
        find_vertex_radius(3 * omega_of(1.596), omega_of(1.596), (0.20e-6, 0.21e-6),
                           numerics=numerics)

    with then:
        assert "widen the bracket" in str(exc.value)


def test_degenerate_curve_is_monotone(numerics):
    with given:
        radii = [0.33e-6, 0.395e-6, 0.45e-6]

    with when:
        curve = degenerate_wavelength_curve(radii, numerics=numerics)

    with then:
        wavelengths = [p.wavelength for p in curve.points]
        assert len(wavelengths) == 3
        assert np.all(np.diff(wavelengths) > 0)
        assert all(p.gamma > 0 for p in curve.points)


def test_emission_pair_is_phasematched(fiber, numerics):
    with given:
        omega_p = omega_of(0.531)
        omega_i = omega_of(1.596)

    with when:
        omega_r, omega_s = resolve_emission_pair(fiber, omega_p, omega_i, numerics=numerics)

    with then:
        assert omega_r > omega_s
        freqs = ProcessFrequencies(omega_p, omega_r, omega_s, omega_i)
        assert abs(delta_k(fiber, freqs, numerics=numerics)) < numerics.phasematch_tolerance


def test_contour_is_symmetric_in_detuning(fiber, numerics):
    with given:
        omega_i = omega_of(1.596)
        pumps = [omega_of(0.531), omega_of(0.5305)]

    with when:
        points = emission_contour_vs_pump(fiber, omega_i, pumps, numerics=numerics)

    with then:
        assert points
        for omega_p in pumps:
            deltas = sorted(p.delta for p in points if p.omega_p == omega_p)
            assert deltas == pytest.approx([-d for d in reversed(deltas)])


def test_gamma_map_masks_invalid_cells(fiber, numerics):
    with given:
        omega_i = omega_of(1.596)
        pumps = [omega_of(0.531)]
        # The last detuning pushes signal-2 beyond the silica validity range
        deltas = [0.0, 5e13, 7.5e14]

    with when:
        gmap = gamma_map(fiber, omega_i, pumps, deltas, numerics=numerics)
        stream = io.StringIO()
        write_gamma_map_csv(gmap, stream)

    with then:
        assert np.isfinite(gmap.gamma[0, 0])
        assert np.isnan(gmap.gamma[0, 2])
        lines = stream.getvalue().splitlines()
        assert lines[0] == "omega_p_rad_s,delta_rad_s,gamma_per_W_m,phasematched"
        assert lines[3].split(",")[2] == "NA"


def test_write_degenerate_curve_csv():
    with given:
        curve = DegenerateCurve(points=(DegeneratePoint(0.395e-6, 1.596e-6, 0.02),))
        stream = io.StringIO()

    with when:
        write_degenerate_curve_csv(curve, stream)

    with then:
        header, row = stream.getvalue().splitlines()
        assert header == "r_um,lambda_deg_um,gamma_W_km"
        assert [float(v) for v in row.split(",")] == pytest.approx([0.395, 1.596, 20.0])


def test_write_contour_csv():
    with given:
        point = PhasematchPoint(radius=0.395e-6, omega_p=3.5e15, delta=0.0, omega_i=1.2e15,
                                residual=0.0)
        stream = io.StringIO()

    with when:
        write_contour_csv([point], stream)

    with then:
        assert stream.getvalue().splitlines()[0] == "omega_p_rad_s,delta_rad_s,radius_um"


def test_gamma_decreases_along_degenerate_curve(numerics):
    with given:
        radii = [0.33e-6, 0.36e-6, 0.395e-6, 0.42e-6, 0.45e-6]

    with when:
        curve = degenerate_wavelength_curve(radii, numerics=replace(numerics,
                                                                    map_profile_points=128))

    with then:
        assert curve.skipped == ()
        gammas = [p.gamma for p in curve.points]
        assert np.all(np.diff(gammas) < 0)


def test_emission_pair_at_phasematching_radius(numerics):
    with given:
        fiber = FiberSpec(radius=find_phasematching_radius(1.596e-6, numerics=numerics))

    with when:
        omega_r, omega_s = resolve_emission_pair(fiber, omega_of(0.531), omega_of(1.596),
                                                 numerics=numerics)

    with then:
        assert omega_to_wavelength(omega_r) * 1e9 == pytest.approx(1529, abs=3)
        assert omega_to_wavelength(omega_s) * 1e9 == pytest.approx(1659, abs=3)
