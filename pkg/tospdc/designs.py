"""
Design files: JSON documents describing a source in laboratory units.

Every quantity is converted to SI here and nowhere else. `sigma_GHz` and `filter_THz`
are angular (1 GHz = 1e9 rad/s, 1 THz = 1e12 rad/s).
"""
import json
import logging
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Literal, Mapping, Optional, Tuple, TypedDict, Union

from ._errors import DesignError, InputError
from ._numerics import NumericsConfig, default_numerics
from ._process import ProcessConfig, PumpEnvelope, SpectralFilter
from .dispersion import (
    FUSED_SILICA,
    SellmeierModel,
    load_material,
    omega_to_wavelength,
    wavelength_to_omega,
)
from .fiber_modes import FiberSpec
from .nonlinearity import Chi3
from .phasematching import find_phasematching_radius, resolve_emission_pair

__all__ = ("FiberSection", "PumpSection", "EmissionSection", "DesignFile", "Design",
           "PRESETS", "MATERIALS", "parse_design", "load_design", "preset", "broadened",)

logger = logging.getLogger(__name__)

Auto = Literal["auto"]

MATERIALS: Dict[str, SellmeierModel] = {"fused_silica": FUSED_SILICA}

# Relative energy-conservation slack tolerated in hand-written wavelengths
_CONSERVATION_SLACK = 1e-4


class FiberSection(TypedDict, total=False):
    radius_um: Union[float, Auto]
    """Core radius, or "auto" to phasematch degenerate emission at `auto_lambda_um`."""

    auto_lambda_um: float
    """Degenerate wavelength used to resolve an automatic radius (default 3 lambda_p)."""

    material: str
    """Built-in material name or path to a JSON material file (default fused_silica)."""

    cladding_index: float
    """Cladding refractive index (default 1.0, air)."""


class PumpSection(TypedDict, total=False):
    lambda_um: float
    sigma_GHz: float
    avg_power_mW: float
    rep_rate_MHz: float


class EmissionSection(TypedDict, total=False):
    lambda_r_um: Union[float, Auto]
    """Signal-1 wavelength, or "auto" for the phasematched partner of the idler."""

    lambda_s_um: Union[float, Auto]
    """Signal-2 wavelength; omitted or "auto" values follow from the other modes."""

    lambda_i_um: float
    """Idler wavelength (default 3 lambda_p)."""

    filter_THz: float
    """Common Gaussian filter bandwidth; no filters when absent."""


class DesignFile(TypedDict, total=False):
    """
    Represents a parsed design document.

    Only `pump.lambda_um`, `pump.sigma_GHz`, `pump.avg_power_mW`, `fiber.radius_um`
    and `fiber_length_cm` are required.
    """

    name: str
    fiber: FiberSection
    pump: PumpSection
    emission: EmissionSection
    fiber_length_cm: float
    chi3_m2_V2: float
    nonlinear_phase: bool
    """Include the nonlinear phase in flux calculations (default true)."""

    numerics: Dict[str, Any]
    """Overrides of `NumericsConfig` fields."""


@dataclass(frozen=True)
class Design:
    name: str
    config: ProcessConfig
    numerics: NumericsConfig


PRESETS: Dict[str, DesignFile] = {
    "degenerate": {
        "name": "degenerate",
        "fiber": {"radius_um": "auto"},
        "pump": {"lambda_um": 0.532, "sigma_GHz": 23.5, "avg_power_mW": 200.0,
                 "rep_rate_MHz": 1.0},
        "fiber_length_cm": 10.0,
        "nonlinear_phase": False,
    },
    "nondegenerate": {
        "name": "nondegenerate",
        "fiber": {"radius_um": "auto", "auto_lambda_um": 1.596},
        "pump": {"lambda_um": 0.531, "sigma_GHz": 23.5, "avg_power_mW": 200.0,
                 "rep_rate_MHz": 1.0},
        "emission": {"lambda_r_um": "auto", "lambda_s_um": "auto", "lambda_i_um": 1.596,
                     "filter_THz": 15.0},
        "fiber_length_cm": 10.0,
        "nonlinear_phase": False,
    },
}


def _number(section: Mapping[str, Any], key: str, where: str,
            default: Optional[float] = None) -> float:
    value = section.get(key, default)
    if value is None:
        raise DesignError(f"Design file is missing '{where}.{key}'")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DesignError(f"'{where}.{key}' must be a number, got {value!r}")
    return float(value)


def _is_auto(value: Any) -> bool:
    return isinstance(value, str) and value.lower() == "auto"


def _section(data: Mapping[str, Any], key: str) -> Mapping[str, Any]:
    section = data.get(key, {})
    if not isinstance(section, Mapping):
        raise DesignError(f"'{key}' must be an object, got {type(section).__name__}")
    return section


def _material(name: str, base_dir: Optional[Path]) -> SellmeierModel:
    if name in MATERIALS:
        return MATERIALS[name]
    path = Path(name)
    if not path.is_absolute() and base_dir is not None:
        path = base_dir / path
    if not path.exists():
        raise DesignError(f"Unknown material '{name}'. Use one of {', '.join(MATERIALS)} "
                          "or the path of a JSON material file")
    return load_material(path)


def _numerics(overrides: Mapping[str, Any], base: NumericsConfig) -> NumericsConfig:
    known = {f.name: f for f in fields(NumericsConfig)}
    unknown = sorted(set(overrides) - set(known))
    if unknown:
        raise DesignError(f"Unknown numerics keys: {', '.join(unknown)}. "
                          f"Valid keys: {', '.join(known)}")
    values: Dict[str, Any] = {}
    for key, value in overrides.items():
        default = getattr(base, key)
        if isinstance(default, bool):
            if not isinstance(value, bool):
                raise DesignError(f"'numerics.{key}' must be true or false, got {value!r}")
        elif isinstance(default, int) and (isinstance(value, bool) or not isinstance(value, int)):
            raise DesignError(f"'numerics.{key}' must be an integer, got {value!r}")
        elif isinstance(default, float) and not isinstance(value, (int, float)):
            raise DesignError(f"'numerics.{key}' must be a number, got {value!r}")
        values[key] = type(default)(value)
    return replace(base, **values)


def _fiber(section: Mapping[str, Any], lambda_p: float, base_dir: Optional[Path],
           numerics: NumericsConfig) -> FiberSpec:
    core = _material(str(section.get("material", "fused_silica")), base_dir)
    cladding_index = _number(section, "cladding_index", "fiber", 1.0)
    radius_um = section.get("radius_um")
    if _is_auto(radius_um):
        auto_lambda = _number(section, "auto_lambda_um", "fiber", 3 * lambda_p) * 1e-6
        radius = find_phasematching_radius(auto_lambda, core=core, cladding_index=cladding_index,
                                           numerics=numerics)
        logger.info("Resolved automatic radius %.6f um (degenerate emission at %.6g um)",
                    radius * 1e6, auto_lambda * 1e6)
    else:
        radius = _number(section, "radius_um", "fiber") * 1e-6
    return FiberSpec(radius=radius, core=core, cladding_index=cladding_index)


def _emission(section: Mapping[str, Any], fiber: FiberSpec, omega_p: float,
              numerics: NumericsConfig) -> Tuple[float, float, float]:
    lambda_i = section.get("lambda_i_um")
    if lambda_i is None:
        omega_i = omega_p / 3
    else:
        omega_i = float(wavelength_to_omega(_number(section, "lambda_i_um", "emission") * 1e-6))

    lambda_r = section.get("lambda_r_um")
    lambda_s = section.get("lambda_s_um")
    if lambda_r is None and lambda_s is None:
        omega_r = omega_s = (omega_p - omega_i) / 2
    elif _is_auto(lambda_r):
        if lambda_s is not None and not _is_auto(lambda_s):
            raise DesignError("'emission.lambda_s_um' must be \"auto\" or omitted when "
                              "'emission.lambda_r_um' is \"auto\"")
        omega_r, omega_s = resolve_emission_pair(fiber, omega_p, omega_i, numerics=numerics)
    elif lambda_r is None:
        raise DesignError("'emission.lambda_r_um' is required when 'lambda_s_um' is given")
    else:
        omega_r = float(wavelength_to_omega(_number(section, "lambda_r_um", "emission") * 1e-6))
        omega_s = omega_p - omega_r - omega_i
        if lambda_s is not None and not _is_auto(lambda_s):
            given = float(wavelength_to_omega(_number(section, "lambda_s_um", "emission") * 1e-6))
            if abs(given - omega_s) > _CONSERVATION_SLACK * omega_p:
                raise DesignError(
                    f"Emission wavelengths do not conserve energy: signal-2 must be "
                    f"{omega_to_wavelength(omega_s) * 1e6:.6g} um, "
                    f"got {lambda_s} um"
                )
    if not omega_s > 0:
        raise DesignError("Signal-1 and idler frequencies exceed the pump frequency")
    return omega_r, omega_s, omega_i


def parse_design(data: Mapping[str, Any], *, base_dir: Optional[Path] = None,
                 numerics: NumericsConfig = default_numerics) -> Design:
    """
    Build a `Design` from a design document, resolving automatic radius and wavelengths.

    :param data: The parsed JSON document.
    :param base_dir: Directory against which relative material paths are resolved.
    :param numerics: Numerics the document's `numerics` block overrides.
    :return: The resolved `Design`.
    :raises DesignError: If a key is missing, malformed or inconsistent.
    :raises NoSignChange: If an automatic radius or wavelength cannot be resolved.
    """
    if not isinstance(data, Mapping):
        raise DesignError(f"A design must be a JSON object, got {type(data).__name__}")
    numerics = _numerics(_section(data, "numerics"), numerics)

    pump = _section(data, "pump")
    lambda_p = _number(pump, "lambda_um", "pump")
    omega_p = float(wavelength_to_omega(lambda_p * 1e-6))
    envelope = PumpEnvelope(omega_p0=omega_p, sigma=_number(pump, "sigma_GHz", "pump") * 1e9)

    fiber = _fiber(_section(data, "fiber"), lambda_p, base_dir, numerics)
    emission = _section(data, "emission")
    omega_r, omega_s, omega_i = _emission(emission, fiber, omega_p, numerics)

    filters = None
    if "filter_THz" in emission:
        sigma_f = _number(emission, "filter_THz", "emission") * 1e12
        filters = (SpectralFilter(omega_r, sigma_f), SpectralFilter(omega_s, sigma_f),
                   SpectralFilter(omega_i, sigma_f))

    nonlinear = data.get("nonlinear_phase", True)
    if not isinstance(nonlinear, bool):
        raise DesignError(f"'nonlinear_phase' must be true or false, got {nonlinear!r}")

    config = ProcessConfig(
        fiber=fiber,
        length=_number(data, "fiber_length_cm", "design") * 1e-2,
        pump=envelope,
        average_power=_number(pump, "avg_power_mW", "pump") * 1e-3,
        omega_r0=omega_r,
        omega_s0=omega_s,
        omega_i0=omega_i,
        repetition_rate=_number(pump, "rep_rate_MHz", "pump", 1.0) * 1e6,
        filters=filters,
        chi3=Chi3(_number(data, "chi3_m2_V2", "design", Chi3().value)),
        nonlinear_phase=nonlinear,
    )
    name = str(data.get("name", "design"))
    logger.debug("Parsed design '%s': %r", name, config)
    return Design(name=name, config=config, numerics=numerics)


def load_design(path: Union[str, Path], *,
                numerics: NumericsConfig = default_numerics) -> Design:
    """
    Read and parse a JSON design file.

    :raises DesignError: If the file cannot be read or parsed.
    """
    path = Path(path)
    try:
        with open(path) as f:
            data = json.load(f)
    except OSError as e:
        raise DesignError(f"Cannot read design file '{path}': {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise DesignError(f"Design file '{path}' is not valid JSON: {e}") from None
    if isinstance(data, dict):
        data.setdefault("name", path.stem)
    return parse_design(data, base_dir=path.parent, numerics=numerics)


def preset(name: str, *, numerics: NumericsConfig = default_numerics) -> Design:
    """
    Return one of the built-in designs (`degenerate` or `nondegenerate`).

    :raises InputError: If the preset does not exist.
    """
    if name not in PRESETS:
        raise InputError(f"Unknown preset '{name}', expected one of {', '.join(PRESETS)}")
    return parse_design(PRESETS[name], numerics=numerics)


def broadened(config: ProcessConfig, length_factor: float = 0.01,
              sigma_factor: float = 200.0) -> ProcessConfig:
    """
    Return the design with a shorter fiber and a broader pump.

    The default factors widen the phasematching and pump features enough for the joint
    spectrum to be resolved on a coarse Cartesian grid.
    """
    if not (length_factor > 0 and sigma_factor > 0):
        raise DesignError("Broadening factors must be positive")
    pump = PumpEnvelope(config.pump.omega_p0, config.pump.sigma * sigma_factor)
    return config.with_changes(length=config.length * length_factor, pump=pump)
