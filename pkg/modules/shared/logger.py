"""
Paradox Logger

Centralized logging for the verification toolkit.
"""

import logging
import os
from datetime import datetime


class ParadoxLogger:
    """Centralized logging for construction and verification runs.

    Handlers, and the log directory, are created on the first message, so a
    module-level instance costs nothing at import time.
    """

    def __init__(self, name: str = "paradox"):
        self.logger = logging.getLogger(name)
        debug = os.getenv("DEBUG_MODE", "false").lower() == "true"
        self.level = logging.DEBUG if debug else logging.INFO
        self.logger.setLevel(self.level)

    def _ready(self) -> logging.Logger:
        if not self.logger.handlers:
            # Create logs directory
            log_dir = os.getenv("PARADOX_LOG_DIR", "logs")
            os.makedirs(log_dir, exist_ok=True)

            log_file = os.path.join(log_dir, f"paradox_{datetime.now().strftime('%Y%m%d')}.log")
            file_handler = logging.FileHandler(log_file, encoding="utf-8")
            file_handler.setLevel(self.level)

            console_handler = logging.StreamHandler()
            console_handler.setLevel(self.level)

            formatter = logging.Formatter(
                '%(asctime)s - %(levelname)s - %(message)s',
                datefmt='%H:%M:%S'
            )
            file_handler.setFormatter(formatter)
            console_handler.setFormatter(formatter)

            self.logger.addHandler(file_handler)
            self.logger.addHandler(console_handler)
        return self.logger

    def set_debug(self, enabled: bool = True):
        """Switch every handler to DEBUG (or back to INFO)."""
        self.level = logging.DEBUG if enabled else logging.INFO
        self.logger.setLevel(self.level)
        for handler in self._ready().handlers:
            handler.setLevel(self.level)

    def log_info(self, message: str):
        """Log info message."""
        self._ready().info(message)

    def log_success(self, message: str):
        """Log success message."""
        self._ready().info(f"✅ {message}")

    def log_warning(self, message: str):
        """Log warning message."""
        self._ready().warning(f"⚠️ {message}")

    def log_error(self, message: str):
        """Log error message."""
        self._ready().error(f"❌ {message}")

    def log_debug(self, message: str):
        """Log debug message."""
        self._ready().debug(f"🐛 {message}")
