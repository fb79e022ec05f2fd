from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
import time
from threading import Lock
from typing import Callable, Iterator, List, Optional

import numpy as np

from binary_slab.ensemble.grid import DEFAULT_GRID_CELLS, map_to_grid, reporting_grid
from binary_slab.ensemble.statistics import EnsembleStats
from binary_slab.ensemble.stopping import CLTStoppingRule, StoppingRule
from binary_slab.mixing.materials import MaterialSpec, MixingStats, default_dx_max
from binary_slab.mixing.realization import sample_realization
from binary_slab.transport.mesh import build_mesh
from binary_slab.transport.quadrature import Quadrature, gauss_legendre
from binary_slab.transport.solver import (
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_TOLERANCE,
    solve_fixed_source,
)
from binary_slab.utils.exceptions import BinarySlabError, EnsembleError
from binary_slab.utils.logger import logger


@dataclass(frozen=True)
class EnsembleConfig:
    """Everything that determines an ensemble besides its stopping rule."""

    m1: MaterialSpec
    m2: MaterialSpec
    mixing: MixingStats
    X: float
    quad_order: int = 16
    dx_max: Optional[float] = None
    tol: float = DEFAULT_TOLERANCE
    max_iters: int = DEFAULT_MAX_ITERATIONS
    base_seed: int = 12345
    grid_cells: int = DEFAULT_GRID_CELLS

    @property
    def resolved_dx_max(self) -> float:
        if self.dx_max is not None:
            return self.dx_max
        return default_dx_max((self.m1, self.m2), self.mixing)


@dataclass(frozen=True, eq=False)
class RealizationTask:
    index: int
    config: EnsembleConfig
    grid_edges: np.ndarray


@dataclass
class RealizationResult:
    index: int
    grid_values: np.ndarray
    origin_value: float
    iterations: int
    n_segments: int
    negative_count: int


@lru_cache(maxsize=8)
def _quadrature(order: int) -> Quadrature:
    return gauss_legendre(order)


def solve_realization(task: RealizationTask) -> RealizationResult:
    """
    Sample realization `task.index`, mesh it, solve it and map the scalar flux
    to the reporting grid. Module level so process pools can pickle it.

    Raises:
        EnsembleError: If sampling, meshing or the solve fails.
    """
    config = task.config
    try:
        realization = sample_realization(
            (config.m1, config.m2),
            config.mixing,
            2.0 * config.X,
            seed=config.base_seed,
            index=task.index,
        )
        mesh = build_mesh(
            realization,
            config.X,
            config.resolved_dx_max,
            materials=(config.m1, config.m2),
        )
        field = solve_fixed_source(
            mesh,
            _quadrature(config.quad_order),
            tol=config.tol,
            max_iters=config.max_iters,
        )
    except BinarySlabError as e:
        raise EnsembleError(str(e), task.index) from e

    return RealizationResult(
        index=task.index,
        grid_values=map_to_grid(field, task.grid_edges),
        origin_value=field.value_at_origin(),
        iterations=field.diagnostics.iterations,
        n_segments=len(realization.segments),
        negative_count=field.diagnostics.negative_flux_count,
    )


ExecutorFactory = Callable[[int], Executor]


class EnsembleCoordinator:
    """
    Hands realization solves out in batches and reduces the results into the
    ensemble statistics strictly in index order, checking the stopping rule
    after every reduction. Results past the stopping point are discarded, so
    the outcome does not depend on the number of workers or the batch size.
    """

    def __init__(
        self,
        config: EnsembleConfig,
        stopping_rule: Optional[StoppingRule] = None,
        workers: int = 1,
        batch_size: Optional[int] = None,
        executor_factory: Optional[ExecutorFactory] = None,
    ) -> None:
        if workers < 1:
            raise ValueError("Worker count must be positive")

        self.config = config
        self.stopping_rule = stopping_rule or CLTStoppingRule()
        self.workers = workers
        self.batch_size = batch_size or 4 * workers
        self.executor_factory = executor_factory or _default_executor

        self.grid_edges = reporting_grid(config.X, config.grid_cells)
        self.stats = EnsembleStats.empty(
            self.grid_edges, z=getattr(self.stopping_rule, "z", 1.959963984540054)
        )
        self.next_index = 0
        self.done = False
        self._executor: Optional[Executor] = None
        self._started_at = 0.0
        self._is_started = False
        self._is_stopped = False
        self._lock = Lock()

    def start(self) -> None:
        with self._lock:
            if self._is_started:
                logger.debug("Ensemble coordinator already started")
                return
            if self.workers > 1:
                self._executor = self.executor_factory(self.workers)
            self._started_at = time.perf_counter()
            self._is_started = True
            logger.info(
                f"Ensemble started: X={self.config.X}, seed={self.config.base_seed}, "
                f"workers={self.workers}, dx_max={self.config.resolved_dx_max:.4g}"
            )

    def _tasks(self, count: int) -> List[RealizationTask]:
        return [
            RealizationTask(index=k, config=self.config, grid_edges=self.grid_edges)
            for k in range(self.next_index, self.next_index + count)
        ]

    def _results(self, tasks: List[RealizationTask]) -> Iterator[RealizationResult]:
        if self._executor is None:
            return map(solve_realization, tasks)
        return self._executor.map(solve_realization, tasks)

    def process_next(self) -> bool:
        """
        Solve and reduce the next batch.

        Returns:
            bool: True while more realizations are needed.
        """
        if not self._is_started or self._is_stopped or self.done:
            return False

        remaining = self.stopping_rule.n_max - self.next_index
        tasks = self._tasks(min(self.batch_size, remaining))
        try:
            for result in self._results(tasks):
                self._reduce(result)
                if self.done:
                    break
        except EnsembleError as e:
            logger.error(f"Ensemble failed: {e}")
            raise
        except Exception as e:
            error_msg = f"Error solving realization batch: {str(e)}"
            logger.error(error_msg)
            raise EnsembleError(error_msg, self.next_index) from e

        if not self.done and self.next_index >= self.stopping_rule.n_max:
            self.done = True
            logger.warning(
                f"Ensemble reached n_max={self.stopping_rule.n_max} with relative "
                f"half-width {self.stats.ci_relative_halfwidth:.4g}"
            )
        return not self.done

    def _reduce(self, result: RealizationResult) -> None:
        self.stats.add(result.grid_values, result.origin_value)
        self.next_index = result.index + 1
        self.stats.ci_relative_halfwidth = self.stopping_rule.relative_halfwidth(
            self.stats
        )
        logger.debug(
            f"Realization {result.index}: {result.n_segments} layers, "
            f"{result.iterations} iterations, phi0={result.origin_value:.6g}"
        )
        if result.negative_count:
            logger.debug(
                f"Realization {result.index}: {result.negative_count} negative fluxes"
            )
        if self.next_index % 1000 == 0:
            logger.info(
                f"Ensemble progress: n={self.next_index}, "
                f"mean phi0={self.stats.origin_mean:.6g}, "
                f"half-width={self.stats.ci_relative_halfwidth:.4g}"
            )
        if self.stopping_rule.should_stop(self.stats):
            self.stats.converged = True
            self.done = True

    def result(self) -> EnsembleStats:
        self.stats.wall_time = (
            time.perf_counter() - self._started_at if self._is_started else 0.0
        )
        return self.stats

    def stop(self) -> None:
        with self._lock:
            if self._is_stopped:
                logger.debug("Ensemble coordinator already stopped")
                return
            self._is_stopped = True
            if self._executor is not None:
                try:
                    self._executor.shutdown(wait=True, cancel_futures=True)
                except Exception as e:
                    logger.error(f"Error shutting down realization pool: {e}")
                self._executor = None
            logger.info(f"Ensemble stopped: {self.result().summary_line()}")


def _default_executor(workers: int) -> Executor:
    return ProcessPoolExecutor(max_workers=workers)

