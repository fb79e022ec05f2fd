import math

import pytest

from binary_slab.mixing import (
    MaterialSpec,
    MixingStats,
    default_dx_max,
    eta_factor,
    volume_average,
    volume_fractions,
)
from binary_slab.utils.exceptions import InvalidInputError, ZeroAbsorptionError


@pytest.fixture
def void():
    return MaterialSpec.void()


@pytest.fixture
def set_b_m20():
    """Material 1 of the diffusive set B with M = 20."""
    absorption = 0.1 / 400
    return MaterialSpec(sigma_t=1.0, sigma_s=1.0 - absorption, q=0.2 / 400)


class TestMaterialSpec:
    def test_absorption_is_total_minus_scattering(self):
        material = MaterialSpec(sigma_t=1.0, sigma_s=0.7, q=0.2)
        assert material.sigma_a == pytest.approx(0.3)

    def test_void(self, void):
        assert void.is_void
        assert void.sigma_a == 0.0

    @pytest.mark.parametrize(
        "sigma_t,sigma_s,q",
        [(-1.0, 0.0, 0.0), (1.0, -0.1, 0.0), (1.0, 0.5, -0.2), (1.0, 1.5, 0.0)],
    )
    def test_invalid_data_rejected(self, sigma_t, sigma_s, q):
        with pytest.raises(InvalidInputError):
            MaterialSpec(sigma_t=sigma_t, sigma_s=sigma_s, q=q)

    def test_invalid_data_is_a_value_error(self):
        with pytest.raises(ValueError):
            MaterialSpec(sigma_t=1.0, sigma_s=2.0, q=0.0)


class TestMixingStats:
    @pytest.mark.parametrize(
        "lambdas,expected",
        [
            ((1.0, 1.0), (0.5, 0.5)),
            ((1.0, 0.5), (2 / 3, 1 / 3)),
            ((0.5, 1.0), (1 / 3, 2 / 3)),
        ],
    )
    def test_volume_fractions(self, lambdas, expected):
        p1, p2 = volume_fractions(MixingStats(*lambdas))
        assert p1 == pytest.approx(expected[0])
        assert p2 == pytest.approx(expected[1])
        assert p1 + p2 == pytest.approx(1.0)

    def test_non_positive_width_rejected(self):
        with pytest.raises(InvalidInputError):
            MixingStats(0.0, 1.0)

    def test_transition_length(self):
        stats = MixingStats(1.0, 0.5)
        assert stats.transition_length(2, 0.5, eta=2.0) == pytest.approx(0.5)
        assert math.isinf(stats.transition_length(1, 0.0))

    def test_unknown_material_index(self):
        with pytest.raises(InvalidInputError):
            MixingStats(1.0, 1.0).mean_width(3)


class TestVolumeAverage:
    def test_set_b(self, set_b_m20, void):
        avg = volume_average(set_b_m20, void, MixingStats(1.0, 1.0))
        assert avg.sigma_t == pytest.approx(0.5)
        assert avg.sigma_a == pytest.approx(1.25e-4, rel=1e-9)
        assert avg.q == pytest.approx(2.5e-4)

    def test_identical_materials(self):
        material = MaterialSpec(sigma_t=2.0, sigma_s=1.5, q=0.3)
        avg = volume_average(material, material, MixingStats(1.0, 0.5))
        assert avg.sigma_t == pytest.approx(2.0)
        assert avg.sigma_s == pytest.approx(1.5)
        assert avg.q == pytest.approx(0.3)

    def test_set_a_with_void(self, void):
        material = MaterialSpec(sigma_t=1.0, sigma_s=0.9, q=0.2)
        avg = volume_average(material, void, MixingStats(1.0, 0.5))
        assert avg.sigma_t == pytest.approx(2 / 3)

    def test_as_material(self, set_b_m20, void):
        avg = volume_average(set_b_m20, void, MixingStats(1.0, 1.0))
        material = avg.as_material()
        assert material.sigma_t == avg.sigma_t
        assert material.q == avg.q


class TestEtaFactor:
    def test_pure_absorber_gives_one(self, void):
        absorber = MaterialSpec(sigma_t=1.0, sigma_s=0.0, q=0.2)
        avg = volume_average(absorber, void, MixingStats(1.0, 1.0))
        assert eta_factor(avg) == pytest.approx(1.0)

    def test_set_b(self, set_b_m20, void):
        avg = volume_average(set_b_m20, void, MixingStats(1.0, 1.0))
        assert eta_factor(avg) == pytest.approx(math.sqrt(4000.0), rel=1e-9)

    def test_set_d_choice_one(self, void):
        material = MaterialSpec(sigma_t=1.0, sigma_s=0.99, q=0.2)
        avg = volume_average(material, void, MixingStats(1.0, 1.0))
        assert eta_factor(avg) == pytest.approx(10.0, rel=1e-9)

    def test_scale_consistent(self, void):
        stats = MixingStats(1.0, 0.5)
        base = volume_average(MaterialSpec(1.0, 0.8, 0.2), void, stats)
        scaled = volume_average(MaterialSpec(3.0, 2.4, 0.6), void, stats)
        assert eta_factor(base) == pytest.approx(eta_factor(scaled))

    def test_zero_absorption_refused(self, void):
        scatterer = MaterialSpec(sigma_t=1.0, sigma_s=1.0, q=0.2)
        avg = volume_average(scatterer, void, MixingStats(1.0, 1.0))
        with pytest.raises(ZeroAbsorptionError):
            eta_factor(avg)


class TestDefaultDxMax:
    def test_optically_thin_limit(self, set_b_m20, void):
        dx_max = default_dx_max((set_b_m20, void), MixingStats(1.0, 1.0))
        assert dx_max == pytest.approx(0.1)

    def test_short_layers_limit(self, void):
        material = MaterialSpec(sigma_t=0.5, sigma_s=0.0, q=1.0)
        dx_max = default_dx_max((material, void), MixingStats(0.5, 1.0))
        assert dx_max == pytest.approx(0.05)

    def test_thick_material_limit(self, void):
        material = MaterialSpec(sigma_t=4.0, sigma_s=0.0, q=1.0)
        dx_max = default_dx_max((material, void), MixingStats(1.0, 1.0))
        assert dx_max == pytest.approx(0.025)
