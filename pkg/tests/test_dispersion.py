import json

import numpy as np
import pytest
from baby_steps import given, then, when

from tospdc import DesignError, OutOfValidityRange
from tospdc.dispersion import (
    AIR,
    FUSED_SILICA,
    SellmeierModel,
    load_material,
    omega_to_wavelength,
    refractive_index,
    refractive_index_at_omega,
    wavelength_to_omega,
)


def test_fused_silica_index():
    with when:
        n_1um = refractive_index(FUSED_SILICA, 1.0e-6)
        n_532 = refractive_index(FUSED_SILICA, 0.532e-6)

    with then:
        assert n_1um == pytest.approx(1.45042, abs=1e-4)
        assert n_532 == pytest.approx(1.46071, abs=1e-4)
        assert isinstance(n_1um, float)


def test_normal_dispersion_in_the_visible_and_near_infrared():
    with given:
        wavelengths = np.array([0.5e-6, 1.0e-6, 1.5e-6])

    with when:
        indices = refractive_index(FUSED_SILICA, wavelengths)

    with then:
        assert indices.shape == (3,)
        assert np.all(np.diff(indices) < 0)


def test_index_at_omega_matches_index_at_wavelength():
    with given:
        wavelength = 1.596e-6

    with when:
        n = refractive_index_at_omega(FUSED_SILICA, wavelength_to_omega(wavelength))

    with then:
        assert n == pytest.approx(refractive_index(FUSED_SILICA, wavelength), rel=1e-14)
        assert omega_to_wavelength(wavelength_to_omega(wavelength)) == pytest.approx(wavelength)


def test_out_of_validity_range():
    with when, pytest.raises(OutOfValidityRange) as exc:
        refractive_index(FUSED_SILICA, 5.0e-6)

    with then:
        assert exc.value.wavelength == 5.0e-6
        assert exc.value.validity == FUSED_SILICA.validity


def test_air_index_is_one():
    with when:
        n = refractive_index(AIR, 1.0e-6)

    with then:
        assert n == 1.0


@pytest.mark.parametrize("terms", [((-0.1, 0.01),), ((0.7, -0.01),), ()])
def test_invalid_sellmeier_terms(terms):
    with when, pytest.raises(DesignError) as exc:
        SellmeierModel(name="bad", terms=terms, validity=(0.3e-6, 2.0e-6))

    with then:
        assert exc.type is DesignError


def test_sellmeier_pole_inside_validity():
    with when, pytest.raises(DesignError) as exc:
        # Resonance at 1 um
        SellmeierModel(name="pole", terms=((0.5, 1.0),), validity=(0.3e-6, 2.0e-6))

    with then:
        assert "pole" in str(exc.value)


def test_load_material(tmp_path):
    with given:
        path = tmp_path / "silica.json"
        path.write_text(json.dumps({
            "name": "silica-copy",
            "B": [0.6961663, 0.4079426, 0.8974794],
            "C_um2": [0.0684043 ** 2, 0.1162414 ** 2, 9.896161 ** 2],
            "validity_um": [0.21, 3.71],
        }))

    with when:
        model = load_material(path)

    with then:
        assert model.name == "silica-copy"
        assert refractive_index(model, 1.0e-6) == pytest.approx(
            refractive_index(FUSED_SILICA, 1.0e-6), rel=1e-9)


def test_load_material_missing_key(tmp_path):
    with given:
        path = tmp_path / "broken.json"
        path.write_text(json.dumps({"name": "broken", "B": [0.7]}))

    with when, pytest.raises(DesignError) as exc:
        load_material(path)

    with then:
        assert "broken.json" in str(exc.value)
