import io
from dataclasses import replace

import numpy as np
import pytest
from baby_steps import given, then, when
from scipy.constants import c

from tospdc import DesignError, FiberSpec, GridTooCoarse, ModeId, ModeNotGuided
from tospdc.fiber_modes import (
    ProfileGrid,
    characteristic_residual,
    group_slowness,
    guided_indices,
    mode_profile,
    propagation_constant,
    solve_neff,
    tabulate_dispersion,
    write_dispersion_csv,
)

from .conftest import omega_of


def test_he11_index_between_cladding_and_core(fiber, numerics):
    with given:
        omega = omega_of(1.596)

    with when:
        n_eff = solve_neff(fiber, ModeId.HE11, omega, numerics=numerics)

    with then:
        assert 1.0 < n_eff < fiber.core_index(omega)


def test_he11_root_is_bracketed_within_1e_8(fiber, numerics):
    with given:
        omega = omega_of(1.596)
        n_eff = solve_neff(fiber, ModeId.HE11, omega, numerics=numerics)

    with when:
        below = characteristic_residual(fiber, ModeId.HE11, omega, n_eff - 1e-8)
        above = characteristic_residual(fiber, ModeId.HE11, omega, n_eff + 1e-8)
        at_root = characteristic_residual(fiber, ModeId.HE11, omega, n_eff)

    with then:
        assert np.sign(below) != np.sign(above)
        assert abs(at_root) < 1e-8


def test_he12_guided_at_pump_only(fiber, numerics):
    with given:
        omega_p = omega_of(0.532)
        omega_i = omega_of(1.596)

    with when:
        roots = guided_indices(fiber, omega_p, numerics=numerics)
        n_he12 = solve_neff(fiber, ModeId.HE12, omega_p, numerics=numerics)

    with then:
        assert len(roots) >= 2
        assert roots[0] > n_he12 == roots[1]
        with pytest.raises(ModeNotGuided) as exc:
            solve_neff(fiber, ModeId.HE12, omega_i, numerics=numerics)
        assert exc.value.mode == "HE12"
        assert exc.value.found == 1


def test_propagation_constant(fiber, numerics):
    with given:
        omega = omega_of(1.596)

    with when:
        k = propagation_constant(fiber, ModeId.HE11, omega, numerics=numerics)

    with then:
        assert k == pytest.approx(solve_neff(fiber, ModeId.HE11, omega, numerics=numerics)
                                  * omega / c)


def test_group_slowness_is_stable_under_step_halving(fiber, numerics):
    with given:
        omega = omega_of(1.596)
        halved = replace(numerics, fd_relative_step=numerics.fd_relative_step / 2)

    with when:
        k_prime = group_slowness(fiber, ModeId.HE11, omega, numerics=numerics)
        k_prime_fine = group_slowness(fiber, ModeId.HE11, omega, numerics=halved)

    with then:
        assert c * k_prime > 1.0
        assert k_prime_fine == pytest.approx(k_prime, rel=1e-6)


def test_mode_profile_is_normalized(fiber, numerics):
    with when:
        profile = mode_profile(fiber, ModeId.HE11, omega_of(1.596), numerics=numerics)

    with then:
        assert profile.norm() == pytest.approx(1.0, rel=1e-12)
        assert profile.values.shape == (numerics.profile_points, numerics.profile_points)
        assert not profile.values.flags.writeable


def test_he11_profile_peaks_inside_the_core(fiber):
    with given:
        grid = ProfileGrid(points=129, half_width=4 * fiber.radius)
        step = 2 * grid.half_width / (grid.points - 1)

    with when:
        profile = mode_profile(fiber, ModeId.HE11, omega_of(1.596), grid)

    with then:
        xx, yy = np.meshgrid(profile.x, profile.y)
        core = np.hypot(xx, yy) <= fiber.radius
        peak = np.unravel_index(np.argmax(np.where(core, profile.values, -np.inf)),
                                profile.values.shape)
        assert np.hypot(xx[peak], yy[peak]) <= 2 * step
        assert profile.values[64, 64] > 0


def test_he12_profile_changes_sign_along_y(fiber):
    with given:
        grid = ProfileGrid(points=129, half_width=4 * fiber.radius)

    with when:
        profile = mode_profile(fiber, ModeId.HE12, omega_of(0.532), grid)

    with then:
        column = profile.values[:, 64]
        assert column.max() > 0
        assert column.min() < 0


def test_invalid_fiber():
    with when, pytest.raises(DesignError) as exc:
        FiberSpec(radius=0.0)

    with then:
        assert "radius" in str(exc.value)


def test_dispersion_table(fiber, numerics):
    with given:
        omega = omega_of(1.596)

    with when:
        table = tabulate_dispersion(fiber, ModeId.HE11, 0.95 * omega, 1.05 * omega,
                                    numerics=numerics)

    with then:
        assert table.k_at(omega) == pytest.approx(
            propagation_constant(fiber, ModeId.HE11, omega, numerics=numerics), rel=1e-9)
        assert table.k_prime_at(omega) == pytest.approx(
            group_slowness(fiber, ModeId.HE11, omega, numerics=numerics), rel=1e-5)


def test_write_dispersion_csv(fiber, numerics):
    with given:
        omega = omega_of(1.596)
        table = tabulate_dispersion(fiber, ModeId.HE11, 0.99 * omega, 1.01 * omega, 5,
                                    numerics=numerics)
        stream = io.StringIO()

    with when:
        write_dispersion_csv(table, stream)

    with then:
        lines = stream.getvalue().splitlines()
        assert lines[0] == "omega_rad_s,lambda_um,n_eff,k_rad_m,kprime_s_m"
        assert len(lines) == 6


def test_profile_verification_rejects_coarse_grid(fiber, numerics):
    with given:
        grid = ProfileGrid(points=16, half_width=4 * fiber.radius)
        verified = replace(numerics, verify_profiles=True)

    with when, pytest.raises(GridTooCoarse) as exc:
        mode_profile(fiber, ModeId.HE11, omega_of(1.596), grid, numerics=verified)

    with then:
        assert "increase profile_points" in str(exc.value)
