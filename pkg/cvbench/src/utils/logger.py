# src/utils/logger.py
import logging
import os
import sys
from datetime import datetime

from pythonjsonlogger import jsonlogger


class AppLogger:
    """Process-wide logger: JSON records on stderr, optional plain log file"""

    _instance = None
    _initialized = False

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(AppLogger, cls).__new__(cls)
        return cls._instance

    def __init__(self):
        if not self._initialized:
            self._initialized = True
            self._setup_logger()

    def _setup_logger(self):
        """Setup console and (optional) file logging"""
        self.logger = logging.getLogger("cvbench")
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False

        # Prevent duplicate log messages
        if self.logger.handlers:
            self.logger.handlers.clear()

        console_level = os.getenv("CVBENCH_LOG_LEVEL", "INFO").upper()
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(getattr(logging, console_level, logging.INFO))
        console_handler.setFormatter(
            jsonlogger.JsonFormatter("%(asctime)s %(levelname)s %(name)s %(message)s")
        )
        self.logger.addHandler(console_handler)

        log_dir = os.getenv("CVBENCH_LOG_DIR")
        if not log_dir:
            return

        try:
            os.makedirs(log_dir, exist_ok=True)
            log_file = os.path.join(
                log_dir, f"cvbench_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log"
            )
            file_handler = logging.FileHandler(log_file, encoding="utf-8")
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(
                logging.Formatter(
                    "%(asctime)s | %(levelname)-8s | %(message)s",
                    datefmt="%Y-%m-%d %H:%M:%S",
                )
            )
            self.logger.addHandler(file_handler)
            self.logger.debug(f"Log file created at: {log_file}")
        except OSError as e:
            self.logger.error(f"Failed to set up file logging: {str(e)}")

    def get_logger(self):
        """Get the configured logger"""
        return self.logger


# Create logger instance
logger_instance = AppLogger()
app_logger = logger_instance.get_logger()

# Export the logger
__all__ = ["app_logger"]
