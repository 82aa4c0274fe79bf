import os
import dotenv
from pathlib import Path
import logging

from config.settings import validate_config, WEYL_THREADS, MAX_DEPTH

logger = logging.getLogger(__name__)


def load_environment_variables():
    """
    Load environment variables from .env files and the process environment.

    Returns:
        dict: WEYL_* settings, validated against config.settings
    """
    current_dir = Path(os.getcwd())
    env_paths = [
        current_dir / ".env",
        current_dir.parent / ".env",
        Path(os.path.expanduser("~/.env")),
    ]

    for env_file in env_paths:
        if env_file.exists():
            try:
                # Process environment wins over .env files
                dotenv.load_dotenv(str(env_file.absolute()), override=False)
                logger.debug(f"Loaded environment variables from {env_file}")
            except Exception as e:
                logger.error(f"Error loading environment from {env_file}: {e}")

    settings = {
        "WEYL_THREADS": validate_config("WEYL_THREADS", os.environ.get("WEYL_THREADS", WEYL_THREADS)),
        "MAX_DEPTH": validate_config("MAX_DEPTH", os.environ.get("WEYL_MAX_DEPTH", MAX_DEPTH)),
        "LOG_LEVEL": (os.environ.get("WEYL_LOG_LEVEL") or "").upper() or None,
    }
    logger.debug(f"Environment settings: {settings}")
    return settings


def thread_count():
    """Parallelism cap taken from WEYL_THREADS (defaults to a single thread)."""
    return validate_config("WEYL_THREADS", os.environ.get("WEYL_THREADS", WEYL_THREADS))
