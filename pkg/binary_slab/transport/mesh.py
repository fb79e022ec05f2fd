from dataclasses import dataclass
import math
from typing import List, Optional, Sequence, Union

import numpy as np

from binary_slab.mixing.materials import AveragedSpec, MaterialSpec
from binary_slab.mixing.realization import Realization
from binary_slab.utils.exceptions import InvalidInputError
from binary_slab.utils.logger import logger

# Relative width below which a layer is merged into its neighbour.
DEGENERATE_FRACTION = 1e-12

# Material label of cells carrying volume-averaged data.
AVERAGED = 0

MeshSource = Union[Realization, MaterialSpec, AveragedSpec]


@dataclass(frozen=True, eq=False)
class Mesh:
    """
    Spatial cells over [-X, X] with piecewise-constant data.

    x = 0 is always a cell edge with the same number of cells on each side of
    it in homogeneous meshes.
    """

    edges: np.ndarray
    material: np.ndarray
    sigma_t: np.ndarray
    sigma_s: np.ndarray
    q: np.ndarray

    @property
    def n_cells(self) -> int:
        return int(self.widths.shape[0])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def half_width(self) -> float:
        return float(self.edges[-1])

    @property
    def sigma_a(self) -> np.ndarray:
        return self.sigma_t - self.sigma_s

    @property
    def origin_edge(self) -> int:
        """Index of the edge at x = 0."""
        return int(np.flatnonzero(self.edges == 0.0)[0])


@dataclass
class _Layer:
    left: float
    right: float
    material: int
    data: MaterialSpec

    @property
    def width(self) -> float:
        return self.right - self.left


def cells_for(width: float, dx_max: float) -> int:
    """Smallest number of equal cells of width at most dx_max."""
    return max(1, math.ceil(width / dx_max - 1e-9))


def uniform_edges(X: float, dx_max: float) -> np.ndarray:
    """Uniform edges over [-X, X] with an edge at 0 and even cell count."""
    per_half = cells_for(X, dx_max)
    right = np.linspace(0.0, X, per_half + 1)
    return np.concatenate((0.0 - right[::-1], right[1:]))


def build_mesh(
    source: MeshSource,
    X: float,
    dx_max: float,
    materials: Optional[Sequence[MaterialSpec]] = None,
) -> Mesh:
    """
    Mesh a realization (with its two materials) or a homogeneous slab.

    Each layer is cut into equal cells no wider than dx_max so every material
    interface is a cell edge. Layers thinner than 1e-12 X are merged into a
    neighbour. An edge is forced at x = 0.

    Args:
        source: A Realization, or homogeneous MaterialSpec/AveragedSpec data.
        X: Half-width of the slab.
        dx_max: Maximum cell width.
        materials: The materials indexed by a Realization's segments.

    Raises:
        InvalidInputError: On non-positive dx_max or X, or a realization whose
            total width is not 2X.
    """
    if not dx_max > 0:
        raise InvalidInputError(f"dx_max must be positive, got {dx_max}")
    if not X > 0:
        raise InvalidInputError(f"Half-width must be positive, got {X}")

    if isinstance(source, Realization):
        if materials is None or len(materials) != 2:
            raise InvalidInputError("Meshing a realization needs its two materials")
        if not math.isclose(source.total_width, 2 * X, rel_tol=1e-12):
            raise InvalidInputError(
                f"Realization width {source.total_width} does not match 2X={2 * X}"
            )
        layers = _realization_layers(source, X, materials)
    else:
        data = source.as_material() if isinstance(source, AveragedSpec) else source
        label = AVERAGED if isinstance(source, AveragedSpec) else 1
        layers = [_Layer(-X, X, label, data)]

    layers = _merge_degenerate(layers, DEGENERATE_FRACTION * X)
    layers = _split_at_origin(layers, DEGENERATE_FRACTION * X)
    return _subdivide(layers, dx_max)


def _realization_layers(
    realization: Realization, X: float, materials: Sequence[MaterialSpec]
) -> List[_Layer]:
    edges = realization.interfaces(-X)
    edges[-1] = X
    return [
        _Layer(float(edges[k]), float(edges[k + 1]), m, materials[m - 1])
        for k, (m, _) in enumerate(realization.segments)
    ]


def _merge_degenerate(layers: List[_Layer], min_width: float) -> List[_Layer]:
    if len(layers) == 1:
        return layers

    merged: List[_Layer] = []
    for position, layer in enumerate(layers):
        if layer.width >= min_width:
            if merged and merged[-1].material == layer.material:
                merged[-1].right = layer.right
            else:
                merged.append(layer)
            continue
        logger.warning(
            f"Merging degenerate layer [{layer.left:.17g}, {layer.right:.17g}] "
            f"of material {layer.material} into its neighbour"
        )
        if merged:
            merged[-1].right = layer.right
        elif position + 1 < len(layers):
            layers[position + 1].left = layer.left
    return merged


def _split_at_origin(layers: List[_Layer], snap: float) -> List[_Layer]:
    for k, layer in enumerate(layers):
        if abs(layer.right) <= snap and k + 1 < len(layers):
            layer.right = 0.0
            layers[k + 1].left = 0.0
            return layers
        if layer.left < 0.0 < layer.right:
            left = _Layer(layer.left, 0.0, layer.material, layer.data)
            right = _Layer(0.0, layer.right, layer.material, layer.data)
            return layers[:k] + [left, right] + layers[k + 1 :]
    return layers


def _subdivide(layers: List[_Layer], dx_max: float) -> Mesh:
    edge_parts = [np.array([layers[0].left])]
    counts = []
    for layer in layers:
        n = cells_for(layer.width, dx_max)
        if layer.right == 0.0:
            # Mirror image of the right-hand construction.
            part = 0.0 - np.linspace(0.0, -layer.left, n + 1)[::-1]
        else:
            part = np.linspace(layer.left, layer.right, n + 1)
        edge_parts.append(part[1:])
        counts.append(n)

    def per_cell(values: Sequence[float]) -> np.ndarray:
        return np.repeat(np.asarray(values, dtype=float), counts)

    return Mesh(
        edges=np.concatenate(edge_parts),
        material=np.repeat(np.array([layer.material for layer in layers]), counts),
        sigma_t=per_cell([layer.data.sigma_t for layer in layers]),
        sigma_s=per_cell([layer.data.sigma_s for layer in layers]),
        q=per_cell([layer.data.q for layer in layers]),
    )
