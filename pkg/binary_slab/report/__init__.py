from binary_slab.report.problems import (
    Numerics,
    ProblemConfig,
    custom_problem,
    resolve_problem,
)
from binary_slab.report.runner import (
    ModelRun,
    TableRow,
    convergence_study,
    round_half_even,
    run_models,
    table2,
    table4,
    write_figure_data,
)

__all__ = [
    "ModelRun",
    "Numerics",
    "ProblemConfig",
    "TableRow",
    "convergence_study",
    "custom_problem",
    "resolve_problem",
    "round_half_even",
    "run_models",
    "table2",
    "table4",
    "write_figure_data",
]
