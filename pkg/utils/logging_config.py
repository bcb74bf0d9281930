# Configures loguru logging for console and rotating file output
import os
import sys
from loguru import logger

import config

CONSOLE_FORMAT = "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{message}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan>"
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level} | {name}:{function}:{line} | {message}"


def setup_logging(level: str | None = None, log_dir: str | None = None) -> None:
    """Routes loguru output to stderr and a rotating file; stdout stays reserved for results."""
    log_dir = log_dir or config.LOG_DIR
    os.makedirs(log_dir, exist_ok=True)

    logger.remove()
    logger.add(sys.stderr, level=level or config.LOG_LEVEL, format=CONSOLE_FORMAT)
    logger.add(
        os.path.join(log_dir, "loewyfact.log"),
        rotation="1 week",
        retention="1 month",
        level="DEBUG",
        format=FILE_FORMAT,
    )
    logger.debug("Loguru logger initialized.")
