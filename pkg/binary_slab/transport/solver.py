from typing import List

import numpy as np

from binary_slab.transport.flux import FluxField, SolveDiagnostics
from binary_slab.transport.mesh import Mesh
from binary_slab.transport.quadrature import Quadrature
from binary_slab.transport.sweep import leakage, sweep
from binary_slab.utils.exceptions import ConvergenceError, InvalidInputError
from binary_slab.utils.logger import logger

DEFAULT_TOLERANCE = 1e-8
DEFAULT_MAX_ITERATIONS = 100_000


def relative_change(new: np.ndarray, old: np.ndarray) -> float:
    """Largest pointwise relative change; absolute where the new value is 0."""
    difference = np.abs(new - old)
    scale = np.abs(new)
    ratio = np.divide(difference, scale, out=difference.copy(), where=scale > 0)
    return float(np.max(ratio)) if ratio.size else 0.0


def solve_fixed_source(
    mesh: Mesh,
    quad: Quadrature,
    tol: float = DEFAULT_TOLERANCE,
    max_iters: int = DEFAULT_MAX_ITERATIONS,
    model_tag: str = "benchmark-realization",
    keep_angular: bool = False,
) -> FluxField:
    """
    Solve the fixed-source slab problem with vacuum boundaries by source
    iteration: recompute the scattering source from the latest scalar flux,
    sweep, repeat until the largest relative change is below tol.

    Raises:
        InvalidInputError: If a cell has sigma_s > sigma_t.
        ConvergenceError: After max_iters sweeps without convergence.
    """
    if np.any(mesh.sigma_s > mesh.sigma_t):
        raise InvalidInputError("Scattering ratio exceeds 1 in at least one cell")
    if tol <= 0 or max_iters < 1:
        raise InvalidInputError(
            f"Need tol > 0 and max_iters >= 1, got {tol}, {max_iters}"
        )

    phi = np.zeros(mesh.n_cells)
    history: List[float] = []
    scattering = bool(np.any(mesh.sigma_s > 0))
    negatives = 0

    for iteration in range(1, max_iters + 1):
        result = sweep(mesh, quad, mesh.sigma_s * phi + mesh.q)
        negatives = result.negative_count
        residual = relative_change(result.scalar_flux, phi)
        phi = result.scalar_flux
        history.append(residual)

        if iteration % 1000 == 0:
            logger.debug(f"Source iteration {iteration}: residual={residual:.3e}")

        if not scattering or residual < tol:
            break
    else:
        logger.error(
            f"Source iteration did not converge in {max_iters} iterations "
            f"(residual {history[-1]:.3e})"
        )
        raise ConvergenceError(
            f"Source iteration did not reach tol={tol} in {max_iters} iterations",
            last_iterate=phi,
            residual_history=history,
        )

    if negatives:
        logger.warning(f"Diamond differencing produced {negatives} negative fluxes")

    left, right = leakage(quad, result.exit_flux)
    diagnostics = SolveDiagnostics(
        iterations=iteration,
        residual=0.0 if not scattering else history[-1],
        residual_history=history,
        negative_flux_count=negatives,
        leakage_left=left,
        leakage_right=right,
    )
    logger.debug(f"Transport solve converged in {iteration} iterations")
    return FluxField(
        x=mesh.centers,
        scalar_flux=phi,
        model_tag=model_tag,
        edges=mesh.edges,
        angular_flux=result.angular_flux if keep_angular else None,
        diagnostics=diagnostics,
    )


def particle_balance(field: FluxField, mesh: Mesh) -> float:
    """
    Relative particle imbalance (absorption + leakage - source) / source of a
    solved field on its mesh.
    """
    widths = mesh.widths
    absorption = float(np.sum(mesh.sigma_a * field.scalar_flux * widths))
    source = float(np.sum(mesh.q * widths))
    imbalance = absorption + field.diagnostics.leakage - source
    return imbalance / source if source > 0 else imbalance
