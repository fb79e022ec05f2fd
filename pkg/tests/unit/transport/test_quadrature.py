import math

import numpy as np
import pytest

from binary_slab.transport import gauss_legendre
from binary_slab.utils.exceptions import InvalidInputError


class TestGaussLegendre:
    def test_two_point_rule(self):
        quad = gauss_legendre(2)
        np.testing.assert_allclose(
            quad.mu, [-1 / math.sqrt(3), 1 / math.sqrt(3)], rtol=1e-15
        )
        np.testing.assert_allclose(quad.w, [1.0, 1.0], rtol=1e-15)

    @pytest.mark.parametrize("n", [2, 4, 8, 16, 32, 64, 128])
    def test_weights_sum_to_two(self, n):
        assert gauss_legendre(n).w.sum() == pytest.approx(2.0, abs=1e-13)

    @pytest.mark.parametrize("n", [4, 8, 16, 64])
    def test_second_moment(self, n):
        assert gauss_legendre(n).moment(2) == pytest.approx(2 / 3, abs=1e-12)

    def test_fourth_moment_of_s16(self):
        assert gauss_legendre(16).moment(4) == pytest.approx(2 / 5, abs=1e-13)

    def test_nodes_ascending_symmetric_and_nonzero(self):
        quad = gauss_legendre(16)
        assert np.all(np.diff(quad.mu) > 0)
        assert np.all(quad.mu != 0.0)
        np.testing.assert_array_equal(quad.mu, -quad.mu[::-1])
        np.testing.assert_array_equal(quad.w, quad.w[::-1])

    def test_nodes_are_roots(self):
        quad = gauss_legendre(16)
        coefficients = np.zeros(17)
        coefficients[-1] = 1.0
        residual = np.polynomial.legendre.legval(quad.mu, coefficients)
        assert np.max(np.abs(residual)) < 1e-13

    @pytest.mark.parametrize("n", [0, 3, 17, 130, 2.0, True])
    def test_invalid_orders(self, n):
        with pytest.raises(InvalidInputError):
            gauss_legendre(n)
