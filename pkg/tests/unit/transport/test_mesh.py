from unittest.mock import patch

import numpy as np
import pytest

from binary_slab.mixing import (
    MaterialSpec,
    MixingStats,
    Realization,
    sample_realization,
)
from binary_slab.mixing.materials import volume_average
from binary_slab.transport import build_mesh, uniform_edges
from binary_slab.transport.mesh import AVERAGED, cells_for
from binary_slab.utils.exceptions import InvalidInputError


@pytest.fixture
def materials():
    return (MaterialSpec(sigma_t=1.0, sigma_s=0.5, q=0.2), MaterialSpec.void())


class TestUniformEdges:
    def test_even_count_and_edge_at_origin(self):
        edges = uniform_edges(20.0, 0.1)
        assert edges.shape[0] - 1 == 400
        assert edges[200] == 0.0

    def test_mirror_image(self):
        edges = uniform_edges(3.7, 0.3)
        np.testing.assert_array_equal(edges, -edges[::-1])

    def test_cells_for(self):
        assert cells_for(1.0, 0.1) == 10
        assert cells_for(1.05, 0.1) == 11
        assert cells_for(1e-3, 0.1) == 1


class TestBuildMesh:
    def test_homogeneous_slab(self, materials):
        mesh = build_mesh(materials[0], 20.0, 0.1)
        assert mesh.n_cells == 400
        assert mesh.edges[0] == -20.0
        assert mesh.edges[-1] == 20.0
        assert mesh.edges[mesh.origin_edge] == 0.0
        assert np.all(mesh.widths <= 0.1 + 1e-12)
        assert np.all(mesh.material == 1)

    def test_averaged_data_label(self, materials):
        avg = volume_average(materials[0], materials[1], MixingStats(1.0, 1.0))
        mesh = build_mesh(avg, 2.0, 0.1)
        assert np.all(mesh.material == AVERAGED)
        np.testing.assert_allclose(mesh.sigma_t, 0.5)

    def test_interfaces_are_edges(self, materials):
        realization = Realization(segments=((1, 1.3), (2, 0.7)), total_width=2.0)
        mesh = build_mesh(realization, 1.0, 0.5, materials=materials)
        assert np.any(np.isclose(mesh.edges, 0.3, atol=1e-15))
        assert 0.0 in mesh.edges
        assert np.all(mesh.widths <= 0.5 + 1e-12)
        assert np.all(mesh.material[mesh.centers < 0.3] == 1)
        assert np.all(mesh.material[mesh.centers > 0.3] == 2)
        assert np.all(mesh.sigma_t[mesh.material == 2] == 0.0)

    def test_sampled_realization_is_optically_thin(self, materials):
        stats = MixingStats(1.0, 1.0)
        realization = sample_realization(materials, stats, 40.0, seed=5, index=0)
        mesh = build_mesh(realization, 20.0, 0.1, materials=materials)
        assert np.all(mesh.sigma_t * mesh.widths <= 0.1 + 1e-12)
        assert np.all(np.diff(mesh.edges) > 0)
        interfaces = realization.interfaces(-20.0)
        for x in interfaces[1:-1]:
            assert np.min(np.abs(mesh.edges - x)) < 1e-12

    def test_degenerate_layer_merged_with_warning(self, materials):
        realization = Realization(
            segments=((1, 1.0), (2, 1e-14), (1, 1.0)), total_width=2.0 + 1e-14
        )
        with patch("binary_slab.transport.mesh.logger") as mock_logger:
            mesh = build_mesh(realization, 1.0 + 5e-15, 0.1, materials=materials)
        mock_logger.warning.assert_called_once()
        assert np.all(mesh.material == 1)
        assert np.all(mesh.widths > 1e-3)

    def test_realization_width_must_match(self, materials):
        realization = Realization(segments=((1, 1.0),), total_width=1.0)
        with pytest.raises(InvalidInputError):
            build_mesh(realization, 2.0, 0.1, materials=materials)

    def test_realization_needs_materials(self):
        realization = Realization(segments=((1, 2.0),), total_width=2.0)
        with pytest.raises(InvalidInputError):
            build_mesh(realization, 1.0, 0.1)

    @pytest.mark.parametrize("X,dx", [(0.0, 0.1), (1.0, 0.0), (1.0, -0.1)])
    def test_invalid_sizes(self, materials, X, dx):
        with pytest.raises(InvalidInputError):
            build_mesh(materials[0], X, dx)
