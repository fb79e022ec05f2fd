from binary_slab.lp.solver import (
    LPProblem,
    LPSolution,
    lp_balance,
    lp_sweep,
    solve_adjusted_lp,
    solve_lp,
    solve_standard_lp,
)

__all__ = [
    "LPProblem",
    "LPSolution",
    "lp_balance",
    "lp_sweep",
    "solve_adjusted_lp",
    "solve_lp",
    "solve_standard_lp",
]
