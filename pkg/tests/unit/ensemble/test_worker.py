from unittest.mock import MagicMock, patch

import pytest

from binary_slab.ensemble import EnsembleCoordinator, EnsembleWorker
from binary_slab.utils.exceptions import EnsembleError


class TestEnsembleWorker:
    """Test cases for EnsembleWorker"""

    @pytest.fixture
    def mock_coordinator(self):
        """Fixture to provide a mock coordinator."""
        return MagicMock(spec=EnsembleCoordinator)

    @pytest.fixture
    def worker(self, mock_coordinator):
        return EnsembleWorker(coordinator=mock_coordinator)

    def test_worker_init(self, worker, mock_coordinator):
        assert worker.coordinator == mock_coordinator
        assert worker.running is True

    def test_runs_until_coordinator_is_done(self, worker, mock_coordinator):
        mock_coordinator.process_next.side_effect = [True, True, False]

        stats = worker.run()

        mock_coordinator.start.assert_called_once()
        assert mock_coordinator.process_next.call_count == 3
        mock_coordinator.stop.assert_called_once()
        assert stats is mock_coordinator.result.return_value

    def test_stop_ends_the_loop(self, worker, mock_coordinator):
        def stop_after_batch():
            worker.stop()
            return True

        mock_coordinator.process_next.side_effect = stop_after_batch

        worker.run()

        mock_coordinator.process_next.assert_called_once()
        mock_coordinator.stop.assert_called_once()

    def test_unexpected_error_wrapped(self, worker, mock_coordinator):
        mock_coordinator.process_next.side_effect = Exception("Test error")

        with pytest.raises(EnsembleError) as exc_info:
            worker.run()

        assert "Ensemble failed: Test error" in str(exc_info.value)
        mock_coordinator.stop.assert_called_once()

    def test_ensemble_error_passes_through(self, worker, mock_coordinator):
        original = EnsembleError("bad layer", 17)
        mock_coordinator.process_next.side_effect = original

        with pytest.raises(EnsembleError) as exc_info:
            worker.run()

        assert exc_info.value is original
        mock_coordinator.stop.assert_called_once()

    def test_coordinator_stop_failure_is_logged(self, worker, mock_coordinator):
        mock_coordinator.process_next.return_value = False
        mock_coordinator.stop.side_effect = Exception("pool gone")

        with patch("binary_slab.ensemble.worker.logger") as mock_logger:
            worker.run()

        mock_logger.error.assert_called_once()

    def test_duplicate_stop_ignored(self, worker):
        worker.stop()
        worker.stop()
        assert worker.running is False

    def test_signal_handlers_installed(self, worker):
        with patch("binary_slab.ensemble.worker.signal.signal") as mock_signal:
            worker.install_signal_handlers()
        assert mock_signal.call_count == 2
        handler = mock_signal.call_args_list[0].args[1]
        handler(2, None)
        assert worker.running is False

    def test_no_coordinator(self):
        with pytest.raises(EnsembleError):
            EnsembleWorker(coordinator=None).run()
