import json
import logging
import sys
import traceback
from datetime import UTC, datetime, timedelta
from logging.handlers import RotatingFileHandler
from typing import Any

SUCCESS_LEVEL = 25
LOG_COLORS = {
    "DEBUG": "\033[94m",
    "INFO": "\033[96m",
    "SUCCESS": "\033[92m",
    "WARNING": "\033[93m",
    "ERROR": "\033[91m",
    "CRITICAL": "\033[95m",
    "RESET": "\033[0m",
    "BOLD": "\033[1m",
    "DIM": "\033[2m",
}

logging.addLevelName(SUCCESS_LEVEL, "SUCCESS")


def _context(record: logging.LogRecord) -> dict[str, Any]:
    return getattr(record, "context", None) or {}


class JSONFormatter(logging.Formatter):
    """One JSON object per line; bound context lands in ``record.context``."""

    def __init__(self, text: str):
        super().__init__()
        self.text = text

    def format(self, record):
        exc_text = (
            "".join(traceback.format_exception(*record.exc_info))
            if record.exc_info
            else None
        )
        log_entry = {
            "text": self.text,
            "record": {
                "elapsed": {
                    "repr": str(timedelta(seconds=record.relativeCreated / 1000)),
                    "seconds": record.relativeCreated / 1000,
                },
                "context": _context(record),
                "exception": exc_text,
                "function": record.funcName,
                "level": {"name": record.levelname, "no": record.levelno},
                "line": record.lineno,
                "message": record.getMessage(),
                "module": record.module,
                "process": {"id": record.process, "name": record.processName},
                "time": {
                    "repr": datetime.fromtimestamp(record.created, UTC).isoformat(),
                    "timestamp": record.created,
                },
            },
        }
        return json.dumps(log_entry, default=str)


class PlainTextFormatter(logging.Formatter):
    def __init__(self, colorize: bool = True):
        super().__init__()
        self.colorize = colorize

    def format(self, record):
        log_time = datetime.fromtimestamp(record.created, UTC).strftime(
            "%Y-%m-%d %H:%M:%S.%f"
        )[:-3]
        message = record.getMessage()
        if record.exc_info:
            message += "\n" + "".join(traceback.format_exception(*record.exc_info))
        context = " ".join(f"{k}={v}" for k, v in _context(record).items())
        where = f"{record.module}:{record.lineno}"

        if not self.colorize:
            tail = f" [{context}]" if context else ""
            return f"{log_time} | {record.levelname:<8} | {where} - {message}{tail}"

        level_color = LOG_COLORS.get(record.levelname, LOG_COLORS["RESET"])
        reset, bold = LOG_COLORS["RESET"], LOG_COLORS["BOLD"]
        level = f"{bold}{level_color}{record.levelname:<8}{reset}"
        tail = f" {LOG_COLORS['DIM']}[{context}]{reset}" if context else ""
        return f"{log_time} | {level} | {where} - {bold}{message}{reset}{tail}"


class Logger:
    """Thin wrapper over a non-propagating stdlib logger.

    ``bind`` returns a view sharing the same handlers with extra context
    (branch id, sweep value, ...) attached to every record.
    """

    def __init__(
        self,
        name: str = "skt",
        level: str | int = "INFO",
        context: dict[str, Any] | None = None,
    ):
        self.logger = logging.getLogger(name)
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False
        self.context = dict(context or {})
        if not self.logger.handlers:
            stderr_handler = logging.StreamHandler(sys.stderr)
            stderr_handler.setLevel(level)
            stderr_handler.setFormatter(
                PlainTextFormatter(colorize=sys.stderr.isatty())
            )
            self.logger.addHandler(stderr_handler)

    def bind(self, **context) -> "Logger":
        return Logger(self.logger.name, context={**self.context, **context})

    def set_level(self, level: str | int):
        for handler in self.logger.handlers:
            if not isinstance(handler, RotatingFileHandler):
                handler.setLevel(level)

    def add(self, filepath, level, max_size_mb, retention, text):
        for handler in self.logger.handlers[:]:
            if isinstance(handler, RotatingFileHandler):
                self.logger.removeHandler(handler)
                handler.close()
        handler = RotatingFileHandler(
            filepath,
            maxBytes=max_size_mb * 1024 * 1024,
            backupCount=retention,
            encoding="utf-8",
        )
        handler.setLevel(level)
        handler.setFormatter(JSONFormatter(text))
        self.logger.addHandler(handler)

    def log(self, level, message, exc_info=None):
        self.logger.log(
            level,
            message,
            exc_info=exc_info,
            stacklevel=3,
            extra={"context": self.context},
        )

    def info(self, message, exc_info=None):
        self.log(logging.INFO, message, exc_info)

    def warning(self, message, exc_info=None):
        self.log(logging.WARNING, message, exc_info)

    def error(self, message, exc_info=None):
        self.log(logging.ERROR, message, exc_info)

    def debug(self, message, exc_info=None):
        self.log(logging.DEBUG, message, exc_info)

    def success(self, message, exc_info=None):
        self.log(SUCCESS_LEVEL, message, exc_info)

    def critical(self, message, exc_info=None):
        self.log(logging.CRITICAL, message, exc_info)
