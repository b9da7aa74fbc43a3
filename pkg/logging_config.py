"""
Logging configuration for the simulation package.
Stderr logging for every entry point, plus an optional timestamped log file.
"""

import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional, Union

from config import config

# Global state
main_logger = None
current_file_handler = None

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s"


def setup_main_logging(
    level: Union[int, str, None] = None,
    log_dir: Optional[str] = None,
    force_reset: bool = False,
) -> logging.Logger:
    """Configure root logging once; stdout is left alone for CSV output."""
    global main_logger, current_file_handler

    if main_logger is not None and not force_reset:
        return main_logger

    if level is None:
        level = config.log_level
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.INFO
    if log_dir is None:
        log_dir = config.log_dir

    formatter = logging.Formatter(LOG_FORMAT)

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)
        handler.close()
    current_file_handler = None

    # STDERR Handler
    stderr_handler = logging.StreamHandler(sys.stderr)
    stderr_handler.setFormatter(formatter)
    stderr_handler.setLevel(level)
    root_logger.addHandler(stderr_handler)

    # Optional log file
    if log_dir:
        logs_path = Path(log_dir)
        logs_path.mkdir(parents=True, exist_ok=True)
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        current_file_handler = logging.FileHandler(
            logs_path / f"harmonic_info_{timestamp}.log", encoding="utf-8"
        )
        current_file_handler.setFormatter(formatter)
        current_file_handler.setLevel(level)
        root_logger.addHandler(current_file_handler)

    # Quiet libraries
    logging.getLogger("asyncio").setLevel(logging.WARNING)
    logging.getLogger("mcp").setLevel(logging.WARNING)

    main_logger = logging.getLogger("harmonic_info")
    main_logger.debug(f"🔧 Logging initialized (level={logging.getLevelName(level)}, log_dir={log_dir})")
    return main_logger


def get_logger(name: str = "harmonic_info") -> logging.Logger:
    """Named logger; configures logging on first use."""
    if main_logger is None:
        setup_main_logging()
    return logging.getLogger(name)
