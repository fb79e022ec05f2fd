from typing import Optional

from binary_slab.ensemble.statistics import EnsembleStats
from binary_slab.ensemble.stopping import StoppingRule
from binary_slab.ensemble.worker import run_ensemble
from binary_slab.lp.solver import (
    LPProblem,
    LPSolution,
    solve_adjusted_lp,
    solve_lp,
    solve_standard_lp,
)
from binary_slab.models.base import Model
from binary_slab.transport.flux import FluxField
from binary_slab.transport.mesh import build_mesh
from binary_slab.transport.quadrature import gauss_legendre
from binary_slab.transport.solver import solve_fixed_source


class BenchmarkModel(Model):
    """Ensemble average of per-realization transport solves."""

    name = "benchmark"
    model_tag = "benchmark-ensemble"

    def __init__(self, workers: int = 1, stopping_rule: Optional[StoppingRule] = None):
        self.workers = workers
        self.stopping_rule = stopping_rule
        self.last_stats: Optional[EnsembleStats] = None

    def solve(self, problem) -> FluxField:
        rule = self.stopping_rule or problem.numerics.stopping_rule()
        stats = run_ensemble(problem.ensemble_config(), rule, workers=self.workers)
        self.last_stats = stats
        field = stats.to_flux_field()
        field.metadata["origin_std_error"] = stats.origin_std_error
        field.metadata["origin_mean"] = stats.origin_mean
        return field


class LPModel(Model):
    """Standard Levermore-Pomraning model (eta = 1)."""

    name = "lp"
    model_tag = "LP"

    def __init__(self):
        self.last_solution: Optional[LPSolution] = None

    def lp_problem(self, problem, eta: float = 1.0, eta_source: str = "standard"):
        return LPProblem(
            m1=problem.m1,
            m2=problem.m2,
            stats=problem.stats,
            X=problem.X,
            eta=eta,
            quad=gauss_legendre(problem.numerics.quad_order),
            dx_max=problem.dx_max,
            eta_source=eta_source,
        )

    def _solve(self, lp_problem: LPProblem, problem) -> LPSolution:
        return solve_standard_lp(
            lp_problem, problem.numerics.tol, problem.numerics.max_iters
        )

    def solve(self, problem) -> FluxField:
        solution = self._solve(self.lp_problem(problem), problem)
        self.last_solution = solution
        return solution.to_flux_field()


class ALPModel(LPModel):
    """
    Adjusted LP model: transition lengths divided by eta. eta defaults to
    sqrt(<sigma_t> / <sigma_a>); an explicit value is recorded as user-given.
    """

    name = "alp"
    model_tag = "ALP"

    def __init__(self, eta: Optional[float] = None):
        super().__init__()
        self.eta = eta

    def _solve(self, lp_problem: LPProblem, problem) -> LPSolution:
        n = problem.numerics
        if self.eta is None:
            return solve_adjusted_lp(lp_problem, n.tol, n.max_iters)
        user = self.lp_problem(problem, eta=self.eta, eta_source="user")
        return solve_lp(user, n.tol, n.max_iters)


class AtomicMixModel(Model):
    """Transport on volume-averaged data."""

    name = "am"
    model_tag = "atomic-mix"

    def solve(self, problem) -> FluxField:
        mesh = build_mesh(problem.average, problem.X, problem.dx_max)
        return solve_fixed_source(
            mesh,
            gauss_legendre(problem.numerics.quad_order),
            tol=problem.numerics.tol,
            max_iters=problem.numerics.max_iters,
            model_tag=self.model_tag,
        )
