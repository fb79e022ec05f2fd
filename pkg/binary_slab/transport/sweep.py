from dataclasses import dataclass

import numpy as np
from numba import njit

from binary_slab.transport.mesh import Mesh
from binary_slab.transport.quadrature import Quadrature


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Output of one transport sweep."""

    angular_flux: np.ndarray  # (cells, directions), cell-centered
    scalar_flux: np.ndarray
    exit_flux: np.ndarray  # outgoing edge flux per direction
    negative_count: int


@njit(cache=True)
def _sweep_kernel(widths, sigma_t, emission, mu, w):
    n_cells = widths.shape[0]
    n_dirs = mu.shape[0]
    psi = np.zeros((n_cells, n_dirs))
    exit_flux = np.zeros(n_dirs)
    negatives = 0

    for n in range(n_dirs):
        a = abs(mu[n])
        psi_in = 0.0
        for step in range(n_cells):
            i = step if mu[n] > 0.0 else n_cells - 1 - step
            streaming = 2.0 * a / widths[i]
            center = (0.5 * emission[i] + streaming * psi_in) / (streaming + sigma_t[i])
            psi_out = 2.0 * center - psi_in
            if center < 0.0 or psi_out < 0.0:
                negatives += 1
            psi[i, n] = center
            psi_in = psi_out
        exit_flux[n] = psi_in

    # fixed summation order over directions
    phi = np.zeros(n_cells)
    for i in range(n_cells):
        total = 0.0
        for n in range(n_dirs):
            total += w[n] * psi[i, n]
        phi[i] = total
    return psi, phi, exit_flux, negatives


def sweep(mesh: Mesh, quad: Quadrature, emission: np.ndarray) -> SweepResult:
    """
    March every direction through the mesh with diamond differencing.

    Each cell satisfies mu (psi_out - psi_in) / dx + sigma_t psi_cell = emission / 2
    with psi_cell = (psi_in + psi_out) / 2 and vacuum inflow at both ends.
    Negative cell or edge fluxes are counted, never fixed up.

    Args:
        mesh: Spatial cells and cross sections.
        quad: Discrete ordinates.
        emission: Isotropic emission density per cell (scattering plus source).
    """
    psi, phi, exit_flux, negatives = _sweep_kernel(
        mesh.widths,
        mesh.sigma_t,
        np.ascontiguousarray(emission, dtype=np.float64),
        quad.mu,
        quad.w,
    )
    return SweepResult(
        angular_flux=psi,
        scalar_flux=phi,
        exit_flux=exit_flux,
        negative_count=int(negatives),
    )


def leakage(quad: Quadrature, exit_flux: np.ndarray) -> tuple:
    """Outgoing partial currents (left, right) from the exit edge fluxes."""
    outgoing = quad.w * np.abs(quad.mu) * exit_flux
    return float(np.sum(outgoing[quad.mu < 0])), float(np.sum(outgoing[quad.mu > 0]))
