from typing import Union

import numpy as np

from binary_slab.ensemble.statistics import EnsembleStats
from binary_slab.transport.flux import FluxField
from binary_slab.transport.mesh import uniform_edges
from binary_slab.utils.exceptions import InvalidInputError

DEFAULT_GRID_CELLS = 200


def reporting_grid(X: float, n_cells: int = DEFAULT_GRID_CELLS) -> np.ndarray:
    """Edges of a uniform grid over [-X, X] with an even cell count."""
    if n_cells < 2 or n_cells % 2:
        raise InvalidInputError(
            f"Reporting grid needs an even cell count, got {n_cells}"
        )
    return uniform_edges(X, 2.0 * X / n_cells)


def map_to_grid(flux: FluxField, grid_edges: np.ndarray) -> np.ndarray:
    """
    Values of a flux field on the reporting grid.

    Cell fields are averaged over each reporting cell by differencing the
    running integral of the piecewise-constant flux, which is exact. Point
    fields are interpolated linearly at the reporting cell centers.
    """
    if flux.edges is None:
        centers = 0.5 * (grid_edges[:-1] + grid_edges[1:])
        return np.interp(centers, flux.x, flux.scalar_flux)

    edges = flux.edges
    span = edges[-1] - edges[0]
    slack = 1e-9 * span
    if grid_edges[0] < edges[0] - slack or grid_edges[-1] > edges[-1] + slack:
        raise InvalidInputError("Reporting grid extends beyond the flux field")

    running = np.concatenate(([0.0], np.cumsum(flux.scalar_flux * np.diff(edges))))
    integral = np.interp(grid_edges, edges, running)
    return np.diff(integral) / np.diff(grid_edges)


def relative_error(
    model_values: np.ndarray, benchmark: Union[EnsembleStats, np.ndarray]
) -> np.ndarray:
    """
    Signed (model - benchmark) / benchmark per grid point; NaN where the
    benchmark value is not positive.
    """
    reference = benchmark.mean if isinstance(benchmark, EnsembleStats) else benchmark
    reference = np.asarray(reference, dtype=float)
    model_values = np.asarray(model_values, dtype=float)
    if reference.shape != model_values.shape:
        raise InvalidInputError("Model and benchmark are not on the same grid")
    error = np.full(reference.shape, np.nan)
    positive = reference > 0
    error[positive] = model_values[positive] / reference[positive] - 1.0
    return error


def relative_error_at_origin(
    model: Union[FluxField, float], benchmark: Union[EnsembleStats, float]
) -> float:
    value = model.value_at_origin() if isinstance(model, FluxField) else float(model)
    reference = (
        benchmark.origin_mean
        if isinstance(benchmark, EnsembleStats)
        else float(benchmark)
    )
    if not reference > 0:
        return float("nan")
    return (value - reference) / reference
