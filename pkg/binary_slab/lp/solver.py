from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from binary_slab.lp.sweep import SINGULAR, lp_sweep_kernel
from binary_slab.mixing.materials import (
    MaterialSpec,
    MixingStats,
    eta_factor,
    volume_average,
)
from binary_slab.transport.flux import FluxField, SolveDiagnostics, write_tagged_csv
from binary_slab.transport.mesh import uniform_edges
from binary_slab.transport.quadrature import Quadrature
from binary_slab.transport.solver import (
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_TOLERANCE,
    relative_change,
)
from binary_slab.utils.exceptions import (
    ConvergenceError,
    InvalidInputError,
    SingularBlockError,
)
from binary_slab.utils.logger import logger

ETA_SOURCES = ("standard", "volume-average", "user")


@dataclass(frozen=True, eq=False)
class LPProblem:
    """
    Two-material LP system on a slab with homogeneous mixing statistics.

    eta = 1 is the standard model; eta from `eta_factor` is the adjusted one.
    eta = 0 removes the coupling and is only meant for testing.
    """

    m1: MaterialSpec
    m2: MaterialSpec
    stats: MixingStats
    X: float
    eta: float
    quad: Quadrature
    dx_max: float
    eta_source: str = "user"

    def __post_init__(self) -> None:
        if self.eta < 0:
            raise InvalidInputError(f"eta must be nonnegative, got {self.eta}")
        if not self.X > 0 or not self.dx_max > 0:
            raise InvalidInputError("X and dx_max must be positive")
        if self.eta_source not in ETA_SOURCES:
            raise InvalidInputError(f"Unknown eta source {self.eta_source}")

    @property
    def edges(self) -> np.ndarray:
        return uniform_edges(self.X, self.dx_max)

    @property
    def model_tag(self) -> str:
        return "LP" if self.eta_source == "standard" else "ALP"


@dataclass(eq=False)
class LPSolution:
    """
    Converged LP/ALP fluxes. `psi1`, `psi2` and `phi1`, `phi2` are the
    per-material conditional fluxes; `mean_scalar_flux` = p1 phi1 + p2 phi2.
    """

    x: np.ndarray
    edges: np.ndarray
    psi1: np.ndarray
    psi2: np.ndarray
    mean_scalar_flux: np.ndarray
    phi1: np.ndarray
    phi2: np.ndarray
    eta: float
    eta_source: str
    model_tag: str
    diagnostics: SolveDiagnostics = field(default_factory=SolveDiagnostics)

    def to_flux_field(self) -> FluxField:
        return FluxField(
            x=self.x,
            scalar_flux=self.mean_scalar_flux,
            model_tag=self.model_tag,
            edges=self.edges,
            diagnostics=self.diagnostics,
            metadata={"eta": self.eta, "eta_source": self.eta_source},
        )

    def to_csv(self, path: Union[str, Path]) -> Path:
        """Write `x, mean_scalar_flux, phi1, phi2` with the eta provenance."""
        frame = pd.DataFrame(
            {
                "x": self.x,
                "mean_scalar_flux": self.mean_scalar_flux,
                "phi1": self.phi1,
                "phi2": self.phi2,
            }
        )
        tags = {
            "model_tag": self.model_tag,
            "eta": f"{self.eta:.17g}",
            "eta_source": self.eta_source,
        }
        return write_tagged_csv(path, frame, tags)


def lp_sweep(
    problem: LPProblem,
    emission1: np.ndarray,
    emission2: np.ndarray,
    widths: Optional[np.ndarray] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    One coupled sweep returning u_k = p_k Psi_k per (cell, direction).

    Raises:
        SingularBlockError: If a 2x2 block has a non-positive determinant.
    """
    u1, u2, *_ = _run_sweep(problem, emission1, emission2, widths)
    return u1, u2


def _run_sweep(
    problem: LPProblem,
    emission1: np.ndarray,
    emission2: np.ndarray,
    widths: Optional[np.ndarray] = None,
) -> tuple:
    if widths is None:
        widths = np.diff(problem.edges)
    result = lp_sweep_kernel(
        widths,
        problem.m1.sigma_t,
        problem.m2.sigma_t,
        1.0 / problem.stats.lambda1,
        1.0 / problem.stats.lambda2,
        problem.eta,
        np.ascontiguousarray(emission1, dtype=np.float64),
        np.ascontiguousarray(emission2, dtype=np.float64),
        problem.quad.mu,
        problem.quad.w,
    )
    status, cell, direction, det = result[7:]
    if status == SINGULAR:
        message = (
            f"Singular LP coupling block at cell {cell}, direction {direction} "
            f"(mu={problem.quad.mu[direction]:.6g}, det={det:.3e})"
        )
        logger.error(message)
        raise SingularBlockError(
            message, cell=cell, direction=direction, determinant=det
        )
    return result[:7]


def solve_lp(
    problem: LPProblem,
    tol: float = DEFAULT_TOLERANCE,
    max_iters: int = DEFAULT_MAX_ITERATIONS,
) -> LPSolution:
    """
    Source iteration on the scattering sources (sigma_si / 2) int p_i Psi_i dmu'
    of both materials until both component scalar fluxes change by less than
    tol (relative).

    Raises:
        ConvergenceError: After max_iters sweeps without convergence.
    """
    edges = problem.edges
    widths = np.diff(edges)
    n_cells = widths.shape[0]
    p1, p2 = problem.stats.p1, problem.stats.p2
    m1, m2 = problem.m1, problem.m2

    source1 = np.full(n_cells, p1 * m1.q)
    source2 = np.full(n_cells, p2 * m2.q)
    phi1 = np.zeros(n_cells)
    phi2 = np.zeros(n_cells)
    scattering = m1.sigma_s > 0 or m2.sigma_s > 0
    history: List[float] = []

    logger.debug(
        f"Solving {problem.model_tag} with eta={problem.eta:.6g} on {n_cells} cells"
    )
    for iteration in range(1, max_iters + 1):
        u1, u2, new1, new2, exit1, exit2, negatives = _run_sweep(
            problem, m1.sigma_s * phi1 + source1, m2.sigma_s * phi2 + source2, widths
        )
        residual = max(relative_change(new1, phi1), relative_change(new2, phi2))
        phi1, phi2 = new1, new2
        history.append(residual)
        if iteration % 1000 == 0:
            logger.debug(f"LP iteration {iteration}: residual={residual:.3e}")
        if not scattering or residual < tol:
            break
    else:
        logger.error(f"{problem.model_tag} did not converge in {max_iters} iterations")
        raise ConvergenceError(
            f"LP source iteration did not reach tol={tol} in {max_iters} iterations",
            last_iterate=phi1 + phi2,
            residual_history=history,
        )

    if negatives:
        logger.warning(f"LP sweep produced {negatives} negative fluxes")

    quad = problem.quad
    outgoing = quad.w * np.abs(quad.mu) * (exit1 + exit2)
    diagnostics = SolveDiagnostics(
        iterations=iteration,
        residual=history[-1] if scattering else 0.0,
        residual_history=history,
        negative_flux_count=int(negatives),
        leakage_left=float(np.sum(outgoing[quad.mu < 0])),
        leakage_right=float(np.sum(outgoing[quad.mu > 0])),
    )
    logger.info(
        f"{problem.model_tag} solve (eta={problem.eta:.6g}) converged in "
        f"{iteration} iterations"
    )
    return LPSolution(
        x=0.5 * (edges[:-1] + edges[1:]),
        edges=edges,
        psi1=u1 / p1,
        psi2=u2 / p2,
        mean_scalar_flux=phi1 + phi2,
        phi1=phi1 / p1,
        phi2=phi2 / p2,
        eta=problem.eta,
        eta_source=problem.eta_source,
        model_tag=problem.model_tag,
        diagnostics=diagnostics,
    )


def solve_standard_lp(
    problem: LPProblem,
    tol: float = DEFAULT_TOLERANCE,
    max_iters: int = DEFAULT_MAX_ITERATIONS,
) -> LPSolution:
    """The standard LP model: the same solve with eta forced to 1."""
    return solve_lp(replace(problem, eta=1.0, eta_source="standard"), tol, max_iters)


def solve_adjusted_lp(
    problem: LPProblem,
    tol: float = DEFAULT_TOLERANCE,
    max_iters: int = DEFAULT_MAX_ITERATIONS,
) -> LPSolution:
    """The adjusted model with eta = (<sigma_t> / <sigma_a>)^(1/2)."""
    eta = eta_factor(volume_average(problem.m1, problem.m2, problem.stats))
    adjusted = replace(problem, eta=eta, eta_source="volume-average")
    return solve_lp(adjusted, tol, max_iters)


def lp_balance(solution: LPSolution, problem: LPProblem) -> float:
    """
    Relative particle imbalance summed over both components; the coupling
    terms cancel between the two equations.
    """
    widths = np.diff(solution.edges)
    p1, p2 = problem.stats.p1, problem.stats.p2
    absorption = np.sum(
        (
            problem.m1.sigma_a * p1 * solution.phi1
            + problem.m2.sigma_a * p2 * solution.phi2
        )
        * widths
    )
    source = (p1 * problem.m1.q + p2 * problem.m2.q) * float(np.sum(widths))
    imbalance = float(absorption) + solution.diagnostics.leakage - source
    return imbalance / source if source > 0 else imbalance
