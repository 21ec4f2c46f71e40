# === File: src/logging_config.py ===

import logging
import os
from config import LOG_LEVEL, LOG_FILE, LOG_FORMAT


def setup_logging(level: str = LOG_LEVEL, log_file: str = LOG_FILE):
    """
    Configure logging for the analyzer.
    Creates the log directory if it doesn't exist and sets up file and console logging.

    Args:
        level: Root log level name (defaults to LOG_LEVEL)
        log_file: Path of the log file (defaults to LOG_FILE)

    Returns:
        Logger of this module
    """
    log_dir = os.path.dirname(log_file)
    if log_dir and not os.path.exists(log_dir):
        os.makedirs(log_dir)

    logging.basicConfig(
        level=getattr(logging, level.upper()),
        format=LOG_FORMAT,
        handlers=[
            logging.FileHandler(log_file, encoding='utf-8'),
            logging.StreamHandler()
        ]
    )

    # Third-party noise
    logging.getLogger('sympy').setLevel(logging.WARNING)
    logging.getLogger('httpx').setLevel(logging.WARNING)
    logging.getLogger('uvicorn.access').setLevel(logging.WARNING)

    logger = logging.getLogger(__name__)
    logger.info(f"Logging configured - Level: {level}, File: {log_file}")

    return logger


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance with the specified name.

    Args:
        name: Logger name (usually __name__)

    Returns:
        Configured logger instance
    """
    return logging.getLogger(name)
