"""
Colored logging configuration for parley.

Color Scheme:
    - DEBUG: Blue - per-turn episode details
    - INFO: Cyan - training / evaluation progress
    - WARNING: Yellow - coverage misses, sampler fallbacks, tracker warnings
    - ERROR: Red
    - CRITICAL: Bright Red

Usage:
    from parley.src.core.utils.logging_config import setup_logging

    setup_logging(level=logging.INFO)
"""

import logging
import sys

from colorama import Fore, Style, init

init(autoreset=True)


class ColoredFormatter(logging.Formatter):
    """Formatter with a colored timestamp and level-colored message."""

    COLORS = {
        'DEBUG': Fore.BLUE,
        'INFO': Fore.CYAN,
        'WARNING': Fore.YELLOW,
        'ERROR': Fore.RED,
        'CRITICAL': Fore.RED + Style.BRIGHT,
    }

    COMPONENT_COLORS = {
        'timestamp': Fore.BLUE,
        'module': Fore.MAGENTA,
        'reset': Style.RESET_ALL,
    }

    def __init__(self, show_module: bool = False):
        super().__init__()
        self.show_module = show_module

    def format(self, record):
        """Format log record with colors."""
        level_color = self.COLORS.get(record.levelname, '')
        reset = self.COMPONENT_COLORS['reset']

        timestamp = self.formatTime(record, '%H:%M:%S')
        parts = [
            f"{self.COMPONENT_COLORS['timestamp']}[{timestamp}]{reset}",
            f"{level_color}{record.levelname:8}{reset}",
        ]
        if self.show_module:
            parts.append(f"{self.COMPONENT_COLORS['module']}{record.name}{reset}")
        parts.append(f"{level_color}{record.getMessage()}{reset}")

        log_line = " ".join(parts)
        if record.exc_info:
            log_line += "\n" + self.formatException(record.exc_info)
        return log_line


def setup_logging(level=logging.INFO, show_module: bool = False):
    """
    Set up root logging with colored output on stderr.

    Args:
        level: Logging level (default: logging.INFO)
        show_module: Include the logger name in each line
    """
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(ColoredFormatter(show_module=show_module))

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    root_logger.handlers.clear()
    root_logger.addHandler(console_handler)
