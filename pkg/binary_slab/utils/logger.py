import logging
import os
from typing import Optional


class Logger:
    """
    Singleton logger class for consistent logging across binary-slab.

    Every module logs through the same named logger so that solver progress,
    ensemble progress and CLI output share one format and one level. The level
    comes from LOG_LEVEL and an optional LOG_FILE adds a file handler.
    """

    _instance = None

    def __init__(
        self,
        log_level: str = "INFO",
        logger_name: Optional[str] = None,
        log_file: Optional[str] = None,
    ):
        """
        Initialize the logger with a specific log level and optional name.

        Args:
            log_level (str): The logging level (e.g., "INFO", "DEBUG").
            logger_name (str, optional): The name of the logger. Defaults to
                APP_NAME or "binary-slab".
            log_file (str, optional): Also write records to this file. Defaults
                to LOG_FILE when set.
        """
        self.logger_name = logger_name or os.getenv("APP_NAME", "binary-slab")
        self.logger = logging.getLogger(self.logger_name)
        self.logger.handlers.clear()

        formatter = logging.Formatter("%(asctime)s - %(levelname)s - %(message)s")

        console_handler = logging.StreamHandler()
        console_handler.setFormatter(formatter)
        self.logger.addHandler(console_handler)

        log_file = log_file or os.getenv("LOG_FILE")
        if log_file:
            file_handler = logging.FileHandler(log_file, encoding="utf-8")
            file_handler.setFormatter(formatter)
            self.logger.addHandler(file_handler)

        self.set_level(log_level)
        self.logger.propagate = False

    def set_level(self, log_level: str) -> None:
        """
        Set or update the logging level.

        Args:
            log_level (str): The logging level (e.g., "INFO", "DEBUG").
        """
        level = getattr(logging, log_level.upper(), logging.INFO)
        self.logger.setLevel(level)
        self.logger.debug(f"Logging level set to {log_level}")

    @classmethod
    def get_logger(cls, log_level: Optional[str] = None) -> logging.Logger:
        """
        Get the singleton logger instance, creating it if it doesn't exist.

        Args:
            log_level (str, optional): Level used when creating the instance.
                Defaults to LOG_LEVEL or "INFO".

        Returns:
            logging.Logger: The configured logger instance.
        """
        if cls._instance is None:
            cls._instance = Logger(
                log_level=log_level or os.getenv("LOG_LEVEL", "INFO")
            )
        return cls._instance.logger

    @classmethod
    def update_level(cls, log_level: str) -> None:
        """
        Update the logging level of the existing logger.

        Args:
            log_level (str): The new logging level.
        """
        if cls._instance is None:
            cls.get_logger(log_level=log_level)
        else:
            cls._instance.set_level(log_level)


logger = Logger.get_logger()
