from dataclasses import dataclass
import math
from pathlib import Path
from typing import Dict, Optional, Union

import numpy as np
from scipy.linalg import solve_banded

from binary_slab.mixing.materials import AveragedSpec
from binary_slab.transport.flux import FluxField
from binary_slab.utils.exceptions import InvalidInputError, ZeroAbsorptionError
from binary_slab.utils.logger import logger

DIFFUSION_TAGS = ("diffusion-AM", "diffusion-LP", "diffusion-ALP")


@dataclass(frozen=True)
class DiffusionProblem:
    """
    -D phi'' + sigma_a phi = q on [-(X + d), X + d], phi = 0 at both ends.

    D = beta / (3 <sigma_t>) and d = 2 beta / (3 <sigma_t>); beta = 1 gives
    the atomic-mix and adjusted limits.
    """

    D: float
    sigma_a: float
    q: float
    X: float
    d: float
    beta: float = 1.0
    model_tag: str = "diffusion-AM"

    def __post_init__(self) -> None:
        if not self.D > 0 or not self.X > 0 or not self.d > 0:
            raise InvalidInputError("D, X and d must be positive")
        if self.sigma_a < 0 or self.q < 0:
            raise InvalidInputError("sigma_a and q must be nonnegative")
        if self.beta < 1.0 - 1e-12:
            raise InvalidInputError(f"beta must be at least 1, got {self.beta}")
        if self.model_tag not in DIFFUSION_TAGS:
            raise InvalidInputError(f"Not a diffusion model tag: {self.model_tag}")

    @classmethod
    def from_average(
        cls,
        avg: AveragedSpec,
        X: float,
        beta: float = 1.0,
        model_tag: str = "diffusion-AM",
    ) -> "DiffusionProblem":
        if not avg.sigma_t > 0:
            raise InvalidInputError(
                "Diffusion needs a positive mean total cross section"
            )
        return cls(
            D=beta / (3.0 * avg.sigma_t),
            sigma_a=avg.sigma_a,
            q=avg.q,
            X=X,
            d=2.0 * beta / (3.0 * avg.sigma_t),
            beta=beta,
            model_tag=model_tag,
        )

    @property
    def extrapolated_half_width(self) -> float:
        return self.X + self.d

    @property
    def kappa(self) -> float:
        return math.sqrt(self.sigma_a / self.D)

    def coefficients(self) -> Dict[str, float]:
        return {
            "beta": self.beta,
            "D": self.D,
            "kappa": self.kappa,
            "d": self.d,
            "L": self.extrapolated_half_width,
        }


def _require_absorption(p: DiffusionProblem) -> None:
    if not p.sigma_a > 0:
        raise ZeroAbsorptionError(
            f"{p.model_tag}: closed-form diffusion needs sigma_a > 0"
        )


def _cosh_ratio(p: DiffusionProblem, x: np.ndarray) -> np.ndarray:
    # cosh(k x) / cosh(k L) written with decaying exponentials only.
    kappa = p.kappa
    L = p.extrapolated_half_width
    ax = np.abs(x)
    return (
        np.exp(kappa * (ax - L))
        * (1.0 + np.exp(-2.0 * kappa * ax))
        / (1.0 + math.exp(-2.0 * kappa * L))
    )


def _profile(p: DiffusionProblem, x: np.ndarray) -> np.ndarray:
    return (p.q / p.sigma_a) * (1.0 - _cosh_ratio(p, x))


def solve_diffusion_analytic(
    p: DiffusionProblem, x: Optional[np.ndarray] = None
) -> FluxField:
    """
    Closed-form solution (q / sigma_a) [1 - cosh(kappa x) / cosh(kappa (X + d))],
    kappa = sqrt(sigma_a / D). Defaults to 401 points over [-X, X].

    Raises:
        ZeroAbsorptionError: If sigma_a = 0.
    """
    _require_absorption(p)
    if x is None:
        x = np.linspace(-p.X, p.X, 401)
    x = np.asarray(x, dtype=float)
    return FluxField(
        x=x,
        scalar_flux=_profile(p, x),
        model_tag=p.model_tag,
        metadata={"method": "analytic", **p.coefficients()},
    )


def ode_residual(p: DiffusionProblem, x: np.ndarray) -> np.ndarray:
    """Pointwise -D phi'' + sigma_a phi - q of the closed-form profile."""
    _require_absorption(p)
    x = np.asarray(x, dtype=float)
    phi = _profile(p, x)
    second = -(p.q / p.sigma_a) * p.kappa**2 * _cosh_ratio(p, x)
    return -p.D * second + p.sigma_a * phi - p.q


def solve_diffusion_fd(p: DiffusionProblem, n_cells: int = 10_000) -> FluxField:
    """
    Second-order central differences on a uniform node grid over
    [-(X + d), X + d] with zero Dirichlet ends. The interior system is
    tridiagonal and solved with `scipy.linalg.solve_banded`.

    Raises:
        InvalidInputError: Unless n_cells is an even integer of at least 10.
    """
    if n_cells < 10 or n_cells % 2:
        raise InvalidInputError(f"n_cells must be even and >= 10, got {n_cells}")

    L = p.extrapolated_half_width
    right = np.linspace(0.0, L, n_cells // 2 + 1)
    x = np.concatenate((0.0 - right[::-1], right[1:]))
    h = 2.0 * L / n_cells
    interior = n_cells - 1

    off = -p.D / h**2
    bands = np.zeros((3, interior))
    bands[0, 1:] = off
    bands[1, :] = 2.0 * p.D / h**2 + p.sigma_a
    bands[2, :-1] = off
    rhs = np.full(interior, p.q)

    phi = np.zeros(n_cells + 1)
    phi[1:-1] = solve_banded((1, 1), bands, rhs)
    logger.debug(f"{p.model_tag} finite-difference solve on {n_cells} cells")
    return FluxField(
        x=x,
        scalar_flux=phi,
        model_tag=p.model_tag,
        metadata={
            "method": "finite-difference",
            "n_cells": n_cells,
            **p.coefficients(),
        },
    )


def write_coefficients(
    path: Union[str, Path],
    p: DiffusionProblem,
    mixture: Optional[Dict[str, Optional[float]]] = None,
) -> Path:
    """
    Plain-text `name = value` report of beta, D, kappa, d and L.

    Args:
        path: Target file.
        p: The solved diffusion problem.
        mixture: Mixture values listed between the tag and the coefficients,
            e.g. the averaged cross sections and eta; None values print as
            `none`.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"model_tag = {p.model_tag}"]
    for name, value in (mixture or {}).items():
        lines.append(f"{name} = {'none' if value is None else format(value, '.17g')}")
    lines += [f"{name} = {value:.17g}" for name, value in p.coefficients().items()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.info(f"Wrote diffusion coefficients to {path}")
    return path
