from typing import Union

import numpy as np
from numpy.polynomial import legendre

from binary_slab.mixing.materials import MaterialSpec, MixingStats
from binary_slab.utils.exceptions import ConvergenceError, InvalidInputError

BETA_TOLERANCE = 1e-10
BETA_START_NODES = 8
BETA_MAX_NODES = 2048

ArrayLike = Union[float, np.ndarray]


def alpha(
    mu: ArrayLike,
    m1: MaterialSpec,
    m2: MaterialSpec,
    stats: MixingStats,
    eta: float = 1.0,
) -> ArrayLike:
    """
    Angular factor of the LP diffusion coefficient, vectorised over mu in (0, 1].

    alpha(mu) = [l1 l2 <st> (p1 st2 + p2 st1) + eta (l1 st1 + l2 st2) mu]
              / [l1 l2 st1 st2 + eta (l1 st1 + l2 st2) mu]

    Raises:
        InvalidInputError: For mu outside (0, 1], two void materials, or a
            vanishing denominator (eta = 0 with a void material).
    """
    values = np.asarray(mu, dtype=float)
    if np.any(values <= 0.0) or np.any(values > 1.0):
        raise InvalidInputError("alpha is defined for mu in (0, 1]")
    if m1.sigma_t == 0.0 and m2.sigma_t == 0.0:
        raise InvalidInputError("alpha needs at least one material with sigma_t > 0")
    if eta < 0:
        raise InvalidInputError(f"eta must be nonnegative, got {eta}")

    l1, l2 = stats.lambda1, stats.lambda2
    p1, p2 = stats.p1, stats.p2
    st1, st2 = m1.sigma_t, m2.sigma_t
    mean_st = p1 * st1 + p2 * st2
    coupling = eta * (l1 * st1 + l2 * st2) * values

    numerator = l1 * l2 * mean_st * (p1 * st2 + p2 * st1) + coupling
    denominator = l1 * l2 * st1 * st2 + coupling
    if np.any(denominator <= 0.0):
        raise InvalidInputError(
            "alpha denominator vanishes; eta = 0 with a void material"
        )
    result = numerator / denominator
    return float(result) if np.ndim(mu) == 0 else result


def _gauss_unit_interval(n: int):
    nodes, weights = legendre.leggauss(n)
    return 0.5 * (nodes + 1.0), 0.5 * weights


def beta(
    m1: MaterialSpec,
    m2: MaterialSpec,
    stats: MixingStats,
    eta: float = 1.0,
    tol: float = BETA_TOLERANCE,
) -> float:
    """
    beta = int_0^1 3 mu^2 alpha(mu) dmu with Gauss-Legendre nodes on (0, 1),
    doubling the node count until consecutive values differ by less than tol.

    Raises:
        ConvergenceError: If BETA_MAX_NODES nodes are not enough.
    """
    history = []
    previous = None
    n = BETA_START_NODES
    while n <= BETA_MAX_NODES:
        mu, w = _gauss_unit_interval(n)
        value = float(np.sum(w * 3.0 * mu**2 * alpha(mu, m1, m2, stats, eta)))
        if previous is not None:
            change = abs(value - previous)
            history.append(change)
            if change < tol:
                return value
        previous = value
        n *= 2
    raise ConvergenceError(
        f"beta quadrature did not converge with {BETA_MAX_NODES} nodes",
        last_iterate=previous,
        residual_history=history,
    )
