from binary_slab.diffusion.coefficients import alpha, beta
from binary_slab.diffusion.solvers import (
    DiffusionProblem,
    ode_residual,
    solve_diffusion_analytic,
    solve_diffusion_fd,
    write_coefficients,
)

__all__ = [
    "DiffusionProblem",
    "alpha",
    "beta",
    "ode_residual",
    "solve_diffusion_analytic",
    "solve_diffusion_fd",
    "write_coefficients",
]
