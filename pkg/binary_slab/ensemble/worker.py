import signal
from typing import Any, Optional

from binary_slab.ensemble.coordinator import EnsembleConfig, EnsembleCoordinator
from binary_slab.ensemble.statistics import EnsembleStats
from binary_slab.ensemble.stopping import StoppingRule
from binary_slab.utils.exceptions import EnsembleError
from binary_slab.utils.logger import logger


class EnsembleWorker:
    """
    Drives an EnsembleCoordinator until its stopping rule is met or the worker
    is told to stop; a stopped run still returns the ensemble gathered so far.
    """

    def __init__(self, coordinator: EnsembleCoordinator) -> None:
        self.coordinator = coordinator
        self.running = True
        self._stopping = False

    def run(self) -> EnsembleStats:
        """
        Raises:
            EnsembleError: If a realization fails.
        """
        if not self.coordinator:
            raise EnsembleError("No coordinator provided", -1)

        try:
            logger.info("Ensemble worker started")
            self.coordinator.start()
            while self.running:
                if not self.coordinator.process_next():
                    break
        except EnsembleError:
            raise
        except Exception as e:
            logger.error(f"Ensemble worker error: {e}")
            raise EnsembleError(f"Ensemble failed: {str(e)}", -1) from e
        finally:
            self._stopping = True
            self._stop_coordinator()
            logger.info("Ensemble worker stopped")

        return self.coordinator.result()

    def _stop_coordinator(self) -> None:
        try:
            self.coordinator.stop()
        except Exception as e:
            logger.error(f"Error stopping ensemble coordinator: {e}")

    def stop(self) -> None:
        """Ask the run loop to finish after the current batch."""
        if self._stopping:
            logger.debug("Stop already in progress, ignoring duplicate call")
            return
        logger.info("Stop signal received")
        self._stopping = True
        self.running = False

    def install_signal_handlers(self) -> None:
        """Stop gracefully on SIGINT and SIGTERM. Main thread only."""

        def signal_handler(sig: Any, _frame: Any) -> None:
            logger.info("Shutdown signal received")
            self.stop()

        signal.signal(signal.SIGINT, signal_handler)
        signal.signal(signal.SIGTERM, signal_handler)


def run_ensemble(
    config: EnsembleConfig,
    stopping_rule: Optional[StoppingRule] = None,
    workers: int = 1,
) -> EnsembleStats:
    """Run an ensemble to completion and return its statistics."""
    coordinator = EnsembleCoordinator(config, stopping_rule, workers=workers)
    return EnsembleWorker(coordinator).run()
