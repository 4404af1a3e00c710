import io

import numpy as np
import pytest
from baby_steps import given, then, when
from scipy.integrate import trapezoid

from tospdc import FiberSpec, GridTooCoarse, GridTruncation, InputError
from tospdc.phasematching import ProcessFrequencies, find_phasematching_radius
from tospdc.triplet_state import (
    JsaGrid,
    PumpEnvelope,
    SpectralFilter,
    filtered_jsa,
    from_rotated,
    jsa,
    jsa_axis_rotated,
    jsa_coordinate_planes,
    jsa_slice_rotated,
    marginal_single,
    marginal_two_photon,
    phasematching_factor,
    phasematching_function,
    pump_spectral_amplitude,
    to_rotated,
    write_jsa_csv,
)

from .conftest import omega_of

CENTERS = (1.2e15, 1.18e15, 1.16e15)


def gaussian_grid(points: int = 41, width: float = 1.0, extent: float = 6.0) -> JsaGrid:
    axis = np.linspace(-extent, extent, points)
    r, s, i = np.meshgrid(axis, axis, axis, indexing="ij")
    values = np.exp(-(r ** 2 + 2 * s ** 2 + 3 * i ** 2 + r * s) / (2 * width ** 2)) + 0j
    return JsaGrid(nu_r=axis, nu_s=axis, nu_i=axis, values=values, centers=CENTERS,
                   length=0.1, sigma=1.0)


def test_rotation_round_trip():
    with given:
        rng = np.random.default_rng(7)
        nu_r, nu_s, nu_i = rng.normal(scale=1e12, size=(3, 100))

    with when:
        coords = to_rotated(nu_r, nu_s, nu_i)
        back = from_rotated(coords)

    with then:
        for original, restored in zip((nu_r, nu_s, nu_i), back):
            assert np.max(np.abs(original - restored)) < 1e-12 * 1e12
        norm = np.sqrt(nu_r ** 2 + nu_s ** 2 + nu_i ** 2)
        rotated = np.sqrt(coords.nu_plus ** 2 + coords.nu_a ** 2 + coords.nu_b ** 2)
        assert rotated == pytest.approx(norm, rel=1e-12)
        assert coords.nu_plus == pytest.approx((nu_r + nu_s + nu_i) / np.sqrt(3), rel=1e-12)


def test_rotation_of_scalars():
    with when:
        coords = to_rotated(1.0, 1.0, 1.0)

    with then:
        assert coords.nu_plus == pytest.approx(np.sqrt(3))
        assert coords.nu_a == pytest.approx(0.0, abs=1e-15)
        assert coords.nu_b == pytest.approx(0.0, abs=1e-15)


def test_phasematching_factor():
    with given:
        mismatch = np.linspace(-500, 500, 101)

    with when:
        factor = phasematching_factor(mismatch, 0.1)

    with then:
        assert factor[50] == 1.0
        assert np.all(np.abs(factor) <= 1.0)
        assert phasematching_factor(2 * np.pi / 0.1, 0.1) == pytest.approx(0.0, abs=1e-15)


def test_pump_amplitude_is_normalized():
    with given:
        envelope = PumpEnvelope(omega_p0=3.5e15, sigma=23.5e9)
        omega = np.linspace(3.5e15 - 8 * 23.5e9, 3.5e15 + 8 * 23.5e9, 4001)

    with when:
        amplitude = pump_spectral_amplitude(envelope, omega)

    with then:
        assert trapezoid(np.abs(amplitude) ** 2, omega) == pytest.approx(1.0, rel=1e-9)


def test_unbounded_filter_transmits_everything():
    with when:
        transmission = SpectralFilter(center=1.2e15, sigma_f=np.inf).transmission([1e15, 2e15])

    with then:
        assert list(transmission) == [1.0, 1.0]


def test_marginals_are_consistent():
    with given:
        grid = gaussian_grid()

    with when:
        single_r = marginal_single(grid, "r")
        via_rs = marginal_two_photon(grid, "i").integrate("s")
        via_ri = marginal_two_photon(grid, "s").integrate("i")

    with then:
        assert single_r.modes == ("r",)
        scale = single_r.values.max()
        assert np.max(np.abs(single_r.values - via_rs.values)) < 1e-3 * scale
        assert np.max(np.abs(via_ri.values - via_rs.values)) < 1e-3 * scale
        assert trapezoid(single_r.values, single_r.axes[0]) == pytest.approx(
            grid.total_intensity(), rel=1e-12)


def test_marginal_of_truncated_grid():
    with given:
        grid = gaussian_grid(extent=1.0)

    with when, pytest.raises(GridTruncation) as exc:
        marginal_two_photon(grid, "i")

    with then:
        assert "widen the detuning axes" in str(exc.value)


def test_unknown_mode():
    with when, pytest.raises(InputError) as exc:
        marginal_single(gaussian_grid(points=9), "x")

    with then:
        assert "Unknown mode" in str(exc.value)


def test_filtering_attenuates_the_spectrum():
    with given:
        grid = gaussian_grid()
        filters = [SpectralFilter(center, 1.0) for center in CENTERS]

    with when:
        filtered = filtered_jsa(grid, filters)

    with then:
        assert filtered.filtered
        assert filtered.total_intensity() < grid.total_intensity()
        assert filtered_jsa(grid, None) is grid


def test_phasematching_function_at_design_radius(numerics):
    with given:
        radius = find_phasematching_radius(1.596e-6, numerics=numerics)
        freqs = ProcessFrequencies.degenerate(omega_of(1.596))

    with when:
        matched = phasematching_function(FiberSpec(radius=radius), 0.1, freqs,
                                         numerics=numerics)
        detuned = phasematching_function(FiberSpec(radius=1.02 * radius), 0.1, freqs,
                                         numerics=numerics)

    with then:
        assert abs(matched) == pytest.approx(1.0, abs=1e-3)
        assert abs(detuned) < 0.5


def test_stripped_jsa_peaks_at_one_when_phasematched(degenerate_config, numerics):
    with given:
        radius = find_phasematching_radius(1.596e-6, numerics=numerics)
        config = degenerate_config.with_changes(
            fiber=degenerate_config.fiber.with_radius(radius))
        axis = np.linspace(-2e10, 2e10, 5)

    with when:
        grid = jsa(config, (axis, axis, axis), stripped=True, verify=False, numerics=numerics)

    with then:
        assert abs(grid.values[2, 2, 2]) == pytest.approx(1.0, abs=1e-3)
        assert np.all(np.abs(grid.values) <= 1.0 + 1e-12)


def test_rotated_axis_peaks_at_pump_center(degenerate_config, numerics):
    with given:
        radius = find_phasematching_radius(1.596e-6, numerics=numerics)
        config = degenerate_config.with_changes(
            fiber=degenerate_config.fiber.with_radius(radius))
        plus = np.linspace(-3, 3, 7) * config.pump.sigma

    with when:
        profile = jsa_axis_rotated(config, plus, numerics=numerics)

    with then:
        assert profile.shape == (7,)
        assert int(np.argmax(profile)) == 3
        assert profile[3] == pytest.approx(1.0, abs=1e-3)


def test_coordinate_planes(degenerate_config, numerics):
    with given:
        axis = np.linspace(-1e12, 1e12, 9)

    with when:
        planes = jsa_coordinate_planes(degenerate_config, axis, numerics=numerics)

    with then:
        assert [p.modes for p in planes] == [("r", "s"), ("r", "i"), ("s", "i")]
        for plane in planes:
            assert plane.jsi == pytest.approx(plane.pump * plane.phasematching)
            assert plane.pump[4, 4] == pytest.approx(1.0)


def test_write_jsa_csv():
    with given:
        grid = gaussian_grid(points=3)
        stream = io.StringIO()

    with when:
        write_jsa_csv(grid, stream)

    with then:
        lines = stream.getvalue().splitlines()
        assert lines[0] == "# omega_r0=1200000000000000"
        assert "nu_r,nu_s,nu_i,re,im,intensity" in lines
        assert len(lines) == 7 + 1 + 27


def test_invalid_grid_shape():
    with given:
        axis = np.linspace(-1, 1, 3)

    with when, pytest.raises(InputError) as exc:
        JsaGrid(nu_r=axis, nu_s=axis, nu_i=axis, values=np.zeros((3, 3, 2)), centers=CENTERS,
                length=0.1, sigma=1.0)

    with then:
        assert "shape" in str(exc.value)



@pytest.fixture()
def phasematched_config(degenerate_config, numerics):
    radius = find_phasematching_radius(1.596e-6, numerics=numerics)
    return degenerate_config.with_changes(fiber=degenerate_config.fiber.with_radius(radius))


def test_jsa_accepts_resolved_grid(degenerate_config, numerics):
    with given:
        axis = np.linspace(-1e11, 1e11, 33)

    with when:
        grid = jsa(degenerate_config, (axis, axis, axis), numerics=numerics)

    with then:
        assert grid.refinement_change is not None
        assert grid.refinement_change < numerics.jsa_rel_tol


def test_jsa_rejects_coarse_grid(degenerate_config, numerics):
    with given:
        axis = np.linspace(-2e10, 2e10, 3)

    with when, pytest.raises(GridTooCoarse) as exc:
        jsa(degenerate_config, (axis, axis, axis), numerics=numerics)

    with then:
        assert "increase jsa_points" in str(exc.value)


def test_degenerate_jsa_is_exchange_symmetric(phasematched_config, numerics):
    with given:
        axis = np.linspace(-1e12, 1e12, 9)

    with when:
        grid = jsa(phasematched_config, (axis, axis, axis), verify=False, numerics=numerics)

    with then:
        magnitude = np.abs(grid.values)
        scale = magnitude.max()
        for order in ((1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0)):
            assert np.max(np.abs(magnitude - magnitude.transpose(order))) < 1e-9 * scale


def test_slices_off_the_pump_center(phasematched_config, numerics):
    with given:
        axis = np.linspace(-50e12, 50e12, 129)

    with when:
        slices = {nu_plus: jsa_slice_rotated(phasematched_config, nu_plus, axis, axis,
                                             numerics=numerics).intensity
                  for nu_plus in (-15e9, 0.0, 15e9)}

    with then:
        assert slices[0.0][64, 64] == pytest.approx(1.0, abs=1e-3)
        assert slices[-15e9].max() < slices[0.0].max()
        assert slices[15e9][64, 64] < 0.95 * slices[15e9].max()


def test_filtering_never_adds_intensity():
    with given:
        grid = gaussian_grid()
        widths = [4.0, 2.0, 1.0, 0.5]

    with when:
        totals = [filtered_jsa(grid, [SpectralFilter(center, width) for center in CENTERS])
                  .total_intensity() for width in widths]

    with then:
        assert totals[0] <= grid.total_intensity()
        assert np.all(np.diff(totals) <= 0)
