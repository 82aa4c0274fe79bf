import logging
import logging.handlers
import sys
from pathlib import Path
from config.settings import (
    LOG_DIR,
    LOG_FORMAT,
    LOG_LEVEL,
    LOG_FILE,
    MAX_LOG_SIZE,
    LOG_BACKUP_COUNT,
)


def setup_logging(verbose=False, log_to_file=True, console_level=None):
    """
    Configure logging for the application.

    Console output goes to stderr so that reports written to stdout stay
    byte-identical between runs.

    Args:
        verbose: If True, the console shows DEBUG records
        log_to_file: If True, a rotating log file is written under LOG_DIR
        console_level: Explicit console level (overrides verbose)

    Returns:
        None
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG)

    # Clear existing handlers
    root_logger.handlers = []

    detailed_formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s"
    )

    if console_level is None:
        console_level = logging.DEBUG if verbose else LOG_LEVEL
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    console_handler.setLevel(console_level)
    root_logger.addHandler(console_handler)

    if log_to_file:
        try:
            Path(LOG_DIR).mkdir(parents=True, exist_ok=True)
            file_handler = logging.handlers.RotatingFileHandler(
                LOG_FILE, maxBytes=MAX_LOG_SIZE, backupCount=LOG_BACKUP_COUNT, encoding="utf-8"
            )
            file_handler.setFormatter(detailed_formatter)
            file_handler.setLevel(logging.DEBUG)
            root_logger.addHandler(file_handler)
        except OSError as e:
            logging.warning(f"Could not open log file {LOG_FILE}: {e}")

    # Symbolic expansion is chatty at DEBUG
    logging.getLogger("sympy").setLevel(logging.WARNING)

    logging.debug("Logging configured")
