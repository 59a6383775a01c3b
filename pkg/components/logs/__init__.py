from components.logs import log
from config.defaults import (
    LOG_LEVEL,
    LOG_FILE,
    LOG_FILE_ROTATION,
    LOG_FILE_RETENTION,
    LOG_TEXT,
)


logger = log.Logger(level=LOG_LEVEL)
if LOG_FILE:
    logger.add(
        LOG_FILE,
        level=LOG_LEVEL,
        max_size_mb=LOG_FILE_ROTATION,
        retention=LOG_FILE_RETENTION,
        text=LOG_TEXT,
    )
