"""
Logging functions.
"""

import logging
import os


# -------------------------
# Setup
# -------------------------

_logger = None


# -------------------------
# Definitions
# -------------------------

LOGGER_NAME = 'seppoly'
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


# -------------------------
# Functions
# -------------------------

def get_logger(log_file=None, level=logging.INFO):
    """
    Set up a logger with a console handler and, optionally, a file handler.
    The console handler writes to stderr so that reports on stdout stay clean JSON.

    :param log_file: Path to the log file, or None for console only.
    :param level: Logging level

    :return logging.Logger: Configured logger instance
    """

    global _logger

    if _logger is None:

        _logger = logging.getLogger(LOGGER_NAME)
        _logger.setLevel(level)

        if _logger.handlers:  # Avoid duplicate handlers if logger is reused
            _logger.handlers.clear()

        formatter = logging.Formatter(LOG_FORMAT, datefmt=LOG_DATE_FORMAT)

        console_handler = logging.StreamHandler()
        console_handler.setLevel(level)
        console_handler.setFormatter(formatter)
        _logger.addHandler(console_handler)

        if log_file is not None:
            _add_file_handler(log_file, level, formatter)

    return _logger

def _add_file_handler(log_file, level, formatter):

    log_dir = os.path.dirname(log_file)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)

    file_handler = logging.FileHandler(log_file)
    file_handler.setLevel(level)
    file_handler.setFormatter(formatter)
    _logger.addHandler(file_handler)

def set_log_level(level):
    """
    Change the level of the logger and of all its handlers.
    :param level: Logging level, int or name.
    """

    if isinstance(level, str):
        level = getattr(logging, level.upper())

    logger = get_logger(level=level)
    logger.setLevel(level)
    for handler in logger.handlers:
        handler.setLevel(level)

def set_log_file(log_file, level=logging.INFO):
    """
    Attach a file handler to the logger, replacing a previous file handler.
    :param log_file: Path to the log file.
    :param level: Logging level
    """

    logger = get_logger(level=level)
    for handler in list(logger.handlers):
        if isinstance(handler, logging.FileHandler):
            logger.removeHandler(handler)
            handler.close()

    _add_file_handler(log_file, level, logging.Formatter(LOG_FORMAT, datefmt=LOG_DATE_FORMAT))
