import pytest
from scipy.constants import c, pi

from tospdc import FiberSpec, NumericsConfig, ProcessConfig, PumpEnvelope, SpectralFilter


def omega_of(lambda_um: float) -> float:
    return 2 * pi * c / (lambda_um * 1e-6)


@pytest.fixture()
def fiber() -> FiberSpec:
    return FiberSpec(radius=0.395e-6)


@pytest.fixture()
def numerics() -> NumericsConfig:
    return NumericsConfig(root_scan_points=600, profile_points=128, map_profile_points=64,
                          radius_scan_points=21, contour_scan_points=120, jsa_points=33)


@pytest.fixture()
def degenerate_config(fiber: FiberSpec) -> ProcessConfig:
    omega = omega_of(1.596)
    return ProcessConfig(fiber=fiber, length=0.1, pump=PumpEnvelope(3 * omega, 23.5e9),
                         average_power=0.2, omega_r0=omega, omega_s0=omega, omega_i0=omega,
                         nonlinear_phase=False)


@pytest.fixture()
def nondegenerate_config(fiber: FiberSpec) -> ProcessConfig:
    omega_p = omega_of(0.531)
    omega_r = omega_of(1.529)
    omega_i = omega_of(1.596)
    omega_s = omega_p - omega_r - omega_i
    filters = tuple(SpectralFilter(w, 15e12) for w in (omega_r, omega_s, omega_i))
    return ProcessConfig(fiber=fiber, length=0.1, pump=PumpEnvelope(omega_p, 23.5e9),
                         average_power=0.2, omega_r0=omega_r, omega_s0=omega_s,
                         omega_i0=omega_i, filters=filters, nonlinear_phase=False)
