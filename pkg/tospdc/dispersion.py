"""
Refractive index of the fiber materials.

Indices are given by Sellmeier expansions with a declared validity range;
evaluating a model outside that range is an error rather than an extrapolation.
"""
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike
from scipy.constants import c, pi

from ._errors import DesignError, OutOfValidityRange

__all__ = ("SellmeierModel", "FUSED_SILICA", "AIR", "refractive_index",
           "refractive_index_at_omega", "load_material", "wavelength_to_omega",
           "omega_to_wavelength",)

FloatOrArray = Union[float, np.ndarray]


@dataclass(frozen=True)
class SellmeierModel:
    """
    A Sellmeier dispersion model n^2 = 1 + sum_j B_j L^2 / (L^2 - C_j), L in micrometers.
    """

    name: str
    """Human-readable material name."""

    terms: Tuple[Tuple[float, float], ...]
    """Pairs (B_j, C_j) with C_j the squared resonance wavelength in um^2."""

    validity: Tuple[float, float]
    """Wavelength range (m) inside which the model may be evaluated."""

    def __post_init__(self) -> None:
        lo, hi = self.validity
        if not 0 < lo < hi:
            raise DesignError(f"Invalid validity range {self.validity!r} for '{self.name}'")
        if len(self.terms) == 0:
            raise DesignError(f"Material '{self.name}' has no Sellmeier terms")
        lo_um2, hi_um2 = (lo * 1e6) ** 2, (hi * 1e6) ** 2
        for b, c_um2 in self.terms:
            if b < 0 or c_um2 < 0:
                raise DesignError(f"Sellmeier coefficients of '{self.name}' must be "
                                  f"non-negative, got B={b}, C={c_um2}")
            if b > 0 and lo_um2 <= c_um2 <= hi_um2:
                raise DesignError(f"Sellmeier pole C={c_um2} um^2 of '{self.name}' lies "
                                  "inside its validity range")

    def is_valid(self, wavelength: ArrayLike) -> np.ndarray:
        """
        Return a boolean mask of the wavelengths inside the validity range.

        :param wavelength: Wavelength(s) in meters.
        :return: Mask with the shape of `wavelength`.
        """
        lam = np.asarray(wavelength, dtype=float)
        lo, hi = self.validity
        return (lam >= lo) & (lam <= hi)


FUSED_SILICA = SellmeierModel(
    name="fused_silica",
    terms=((0.6961663, 0.0684043 ** 2),
           (0.4079426, 0.1162414 ** 2),
           (0.8974794, 9.896161 ** 2)),
    validity=(0.21e-6, 3.71e-6),
)
"""Three-term Malitson fused-silica model, valid 0.21-3.71 um."""

AIR = SellmeierModel(name="air", terms=((0.0, 0.0),), validity=(1e-9, 1.0))
"""Constant unit index used for the air cladding."""


def refractive_index(model: SellmeierModel, wavelength: ArrayLike) -> FloatOrArray:
    """
    Evaluate the refractive index of a material.

    :param model: The dispersion model.
    :param wavelength: Vacuum wavelength(s) in meters.
    :return: The refractive index, a float for scalar input.
    :raises OutOfValidityRange: If any wavelength lies outside the model validity.
    """
    lam = np.asarray(wavelength, dtype=float)
    valid = model.is_valid(lam)
    if not np.all(valid):
        bad = lam[~valid] if lam.ndim else lam
        raise OutOfValidityRange(float(np.ravel(bad)[0]), model.validity)

    lam2 = (lam * 1e6) ** 2
    n2 = np.ones_like(lam2)
    for b, c_um2 in model.terms:
        if b:
            n2 = n2 + b * lam2 / (lam2 - c_um2)
    n = np.sqrt(n2)
    return float(n) if n.ndim == 0 else n


def refractive_index_at_omega(model: SellmeierModel, omega: ArrayLike) -> FloatOrArray:
    """
    Evaluate the refractive index at angular frequency `omega` (rad/s).

    :param model: The dispersion model.
    :param omega: Angular frequency (or frequencies) in rad/s.
    :return: The refractive index at wavelength 2 pi c / omega.
    :raises OutOfValidityRange: If the corresponding wavelength is outside the validity range.
    """
    return refractive_index(model, omega_to_wavelength(omega))


def wavelength_to_omega(wavelength: ArrayLike) -> FloatOrArray:
    omega = 2 * pi * c / np.asarray(wavelength, dtype=float)
    return float(omega) if omega.ndim == 0 else omega


def omega_to_wavelength(omega: ArrayLike) -> FloatOrArray:
    lam = 2 * pi * c / np.asarray(omega, dtype=float)
    return float(lam) if lam.ndim == 0 else lam


def load_material(path: Union[str, Path]) -> SellmeierModel:
    """
    Load a Sellmeier model from a JSON material file.

    The file holds the keys `name`, `B`, `C_um2` and `validity_um` (two values).

    :param path: Path to the material file.
    :return: The parsed `SellmeierModel`.
    :raises DesignError: If a key is missing or the coefficient lists differ in length.
    """
    with open(path) as f:
        data = json.load(f)

    try:
        name = str(data["name"])
        b_values: Sequence[float] = data["B"]
        c_values: Sequence[float] = data["C_um2"]
        lo_um, hi_um = data["validity_um"]
    except (KeyError, TypeError, ValueError) as e:
        raise DesignError(f"Malformed material file '{path}': {e!r}") from None

    if len(b_values) != len(c_values):
        raise DesignError(f"Material file '{path}' has {len(b_values)} B values "
                          f"but {len(c_values)} C values")

    terms = tuple((float(b), float(c_um2)) for b, c_um2 in zip(b_values, c_values))
    return SellmeierModel(name=name, terms=terms,
                          validity=(float(lo_um) * 1e-6, float(hi_um) * 1e-6))
