from typing import Dict, Optional

from binary_slab.diffusion.coefficients import beta
from binary_slab.diffusion.solvers import DiffusionProblem, solve_diffusion_analytic
from binary_slab.ensemble.grid import reporting_grid
from binary_slab.mixing.materials import eta_factor
from binary_slab.models.base import Model
from binary_slab.transport.flux import FluxField


class DiffusionAMModel(Model):
    """
    Diffusion limit with D = 1 / (3 <sigma_t>); the closed form is evaluated
    on the reporting-grid edges, which include x = 0.
    """

    name = "diff-am"
    model_tag = "diffusion-AM"

    def beta(self, problem) -> float:
        return 1.0

    def eta(self, problem) -> Optional[float]:
        """Rescaling of the transition lengths; the atomic mix has none."""
        return None

    def mixture_values(self, problem) -> Dict[str, Optional[float]]:
        avg = problem.average
        return {
            "mean_sigma_t": avg.sigma_t,
            "mean_sigma_a": avg.sigma_a,
            "mean_q": avg.q,
            "eta": self.eta(problem),
        }

    def diffusion_problem(self, problem) -> DiffusionProblem:
        return DiffusionProblem.from_average(
            problem.average,
            problem.X,
            beta=self.beta(problem),
            model_tag=self.model_tag,
        )

    def solve(self, problem) -> FluxField:
        x = reporting_grid(problem.X, problem.numerics.grid_cells)
        return solve_diffusion_analytic(self.diffusion_problem(problem), x)


class DiffusionLPModel(DiffusionAMModel):
    """Diffusion limit of the standard LP model: D and d scaled by beta."""

    name = "diff-lp"
    model_tag = "diffusion-LP"

    def beta(self, problem) -> float:
        return beta(problem.m1, problem.m2, problem.stats, eta=1.0)

    def eta(self, problem) -> Optional[float]:
        return 1.0


class DiffusionALPModel(DiffusionAMModel):
    """Diffusion limit of the adjusted model, which recovers beta = 1."""

    name = "diff-alp"
    model_tag = "diffusion-ALP"

    def eta(self, problem) -> Optional[float]:
        return eta_factor(problem.average)
