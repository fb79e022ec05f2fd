from binary_slab.ensemble.coordinator import (
    EnsembleConfig,
    EnsembleCoordinator,
    RealizationResult,
    RealizationTask,
    solve_realization,
)
from binary_slab.ensemble.grid import (
    map_to_grid,
    relative_error,
    relative_error_at_origin,
    reporting_grid,
)
from binary_slab.ensemble.statistics import EnsembleStats, RunningStats
from binary_slab.ensemble.stopping import CLTStoppingRule, StoppingRule
from binary_slab.ensemble.worker import EnsembleWorker, run_ensemble

__all__ = [
    "CLTStoppingRule",
    "EnsembleConfig",
    "EnsembleCoordinator",
    "EnsembleStats",
    "EnsembleWorker",
    "RealizationResult",
    "RealizationTask",
    "RunningStats",
    "StoppingRule",
    "map_to_grid",
    "relative_error",
    "relative_error_at_origin",
    "reporting_grid",
    "run_ensemble",
    "solve_realization",
]
