"""Helper utilities for the mapping-torus tool."""

import os
import logging
from pathlib import Path
from typing import Iterable, Optional, Union

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parent.parent / 'data'


def fresh_name(preferred: str, taken: Iterable[str]) -> str:
    """Return ``preferred``, or ``preferred1``, ``preferred2``, ... if it is taken.

    Args:
        preferred: Name to use when it is free
        taken: Names already in use

    Returns:
        A name not in ``taken``
    """
    taken = set(taken)
    if preferred not in taken:
        return preferred
    suffix = 1
    while f"{preferred}{suffix}" in taken:
        suffix += 1
    return f"{preferred}{suffix}"


def resolve_input(path: Union[str, Path]) -> Path:
    """Resolve a user path, falling back to the bundled data directory.

    Raises:
        FileNotFoundError: If neither the path nor a bundled file exists
    """
    candidate = Path(path)
    if candidate.exists():
        return candidate
    bundled = DATA_DIR / candidate
    if bundled.exists():
        logger.debug(f"Using bundled file {bundled}")
        return bundled
    raise FileNotFoundError(f"Input file not found: {path}")


def setup_logging(log_level: str = 'INFO', log_file: Optional[str] = None,
                  log_format: Optional[str] = None) -> None:
    """Set up logging configuration.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR)
        log_file: Optional log file path
        log_format: Optional log format string
    """
    if log_format is None:
        log_format = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    numeric_level = getattr(logging, log_level.upper(), logging.INFO)

    # Console output goes to stderr so reports on stdout stay machine-readable
    console_handler = logging.StreamHandler()
    console_handler.setLevel(numeric_level)
    console_handler.setFormatter(logging.Formatter(log_format))

    handlers = [console_handler]
    if log_file:
        try:
            log_dir = os.path.dirname(log_file)
            if log_dir:
                os.makedirs(log_dir, exist_ok=True)
            file_handler = logging.FileHandler(log_file, encoding='utf-8')
            file_handler.setLevel(numeric_level)
            file_handler.setFormatter(logging.Formatter(log_format))
            handlers.append(file_handler)
        except Exception as e:
            logger.warning(f"Could not set up file logging: {e}")

    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)
    root_logger.handlers.clear()
    for handler in handlers:
        root_logger.addHandler(handler)


def print_colored(message: str, color: str = 'WHITE') -> None:
    """Print colored message if colors are available.

    Args:
        message: Message to print
        color: Color name (RED, GREEN, YELLOW, CYAN, WHITE)
    """
    try:
        from colorama import Fore, Style
        COLORS_AVAILABLE = True
    except ImportError:
        COLORS_AVAILABLE = False

    if COLORS_AVAILABLE:
        color_code = getattr(Fore, color.upper(), '')
        print(f"{color_code}{message}{Style.RESET_ALL}")
    else:
        print(message)
