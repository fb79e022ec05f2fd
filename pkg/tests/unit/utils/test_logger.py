import logging

from binary_slab.utils.logger import Logger


class TestLogger:
    def test_level_from_argument(self):
        instance = Logger(log_level="warning", logger_name="binary-slab-test-level")
        assert instance.logger.level == logging.WARNING
        assert instance.logger.propagate is False

    def test_unknown_level_falls_back_to_info(self):
        instance = Logger(log_level="chatty", logger_name="binary-slab-test-unknown")
        assert instance.logger.level == logging.INFO

    def test_log_file_from_env(self, tmp_path, monkeypatch):
        target = tmp_path / "run.log"
        monkeypatch.setenv("LOG_FILE", str(target))
        instance = Logger(logger_name="binary-slab-test-file")

        instance.logger.info("sweep converged")
        for handler in instance.logger.handlers:
            handler.flush()

        assert "INFO - sweep converged" in target.read_text(encoding="utf-8")
        assert len(instance.logger.handlers) == 2
        for handler in instance.logger.handlers:
            handler.close()

    def test_handlers_not_duplicated(self, monkeypatch):
        monkeypatch.delenv("LOG_FILE", raising=False)
        Logger(logger_name="binary-slab-test-dup")
        instance = Logger(logger_name="binary-slab-test-dup")
        assert len(instance.logger.handlers) == 1
