from dataclasses import dataclass

import numpy as np
from numpy.polynomial import legendre

from binary_slab.utils.exceptions import InvalidInputError

MAX_ORDER = 128
NEWTON_TOLERANCE = 1e-14


@dataclass(frozen=True, eq=False)
class Quadrature:
    """Discrete-ordinate directions (ascending) and weights on [-1, 1]."""

    mu: np.ndarray
    w: np.ndarray

    @property
    def order(self) -> int:
        return int(self.mu.shape[0])

    def moment(self, k: int) -> float:
        """Quadrature estimate of the integral of mu^k over [-1, 1]."""
        return float(np.sum(self.w * self.mu**k))


def gauss_legendre(n: int) -> Quadrature:
    """
    The n-point Gauss-Legendre rule on [-1, 1].

    Nodes start from numpy's Golub-Welsch estimate and are polished by Newton
    steps on P_n until the step is below 1e-14; nodes and weights are then
    symmetrized so that mu_n = -mu_{N-1-n} holds bit for bit.

    Raises:
        InvalidInputError: If n is odd or outside [2, 128].
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise InvalidInputError(f"Quadrature order must be an integer, got {n!r}")
    if n % 2 or not 2 <= n <= MAX_ORDER:
        raise InvalidInputError(
            f"Quadrature order must be even and in [2, {MAX_ORDER}], got {n}"
        )

    nodes, _ = legendre.leggauss(int(n))
    coefficients = np.zeros(n + 1)
    coefficients[-1] = 1.0
    derivative = legendre.legder(coefficients)

    for _ in range(10):
        step = legendre.legval(nodes, coefficients) / legendre.legval(nodes, derivative)
        nodes = nodes - step
        if np.max(np.abs(step)) < NEWTON_TOLERANCE:
            break

    slope = legendre.legval(nodes, derivative)
    weights = 2.0 / ((1.0 - nodes**2) * slope**2)

    mu = 0.5 * (nodes - nodes[::-1])
    w = 0.5 * (weights + weights[::-1])
    w *= 2.0 / np.sum(w)
    return Quadrature(mu=mu, w=w)
