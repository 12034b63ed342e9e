"""Logging configuration for the library, the CLI and the HTTP app."""

import json
import logging
import sys
from typing import Any

from app.core.config import settings

_STANDARD_ATTRS = frozenset(
    {
        "args",
        "asctime",
        "created",
        "exc_info",
        "exc_text",
        "filename",
        "funcName",
        "id",
        "levelname",
        "levelno",
        "lineno",
        "module",
        "msecs",
        "message",
        "msg",
        "name",
        "pathname",
        "process",
        "processName",
        "relativeCreated",
        "stack_info",
        "taskName",
        "thread",
        "threadName",
    }
)


class JsonFormatter(logging.Formatter):
    """Formatter emitting one JSON object per record."""

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as JSON.

        Args:
            record: The log record to format.

        Returns:
            JSON formatted log string.
        """
        log_record: dict[str, Any] = {
            "timestamp": self.formatTime(record, self.datefmt),
            "level": record.levelname,
            "message": record.getMessage(),
            "logger": record.name,
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }

        if record.exc_info:
            log_record["exception"] = self.formatException(record.exc_info)

        # Fields passed through ``extra=``
        for key, value in record.__dict__.items():
            if key not in _STANDARD_ATTRS:
                log_record[key] = value

        return json.dumps(log_record, default=str)


def setup_logging(debug: bool | None = None, log_file: str | None = None) -> None:
    """Configure root logging.

    Records go to stderr so that stdout carries only command output. JSON
    formatting is used unless debug mode is on.

    Args:
        debug: Overrides ``settings.DEBUG`` when given.
        log_file: Overrides ``settings.LOG_FILE`` when given.
    """
    debug = settings.DEBUG if debug is None else debug
    log_file = log_file or settings.LOG_FILE

    root_logger = logging.getLogger()
    root_logger.handlers = []
    root_logger.setLevel(logging.DEBUG if debug else logging.INFO)

    if debug:
        formatter: logging.Formatter = logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s", datefmt="%Y-%m-%d %H:%M:%S"
        )
    else:
        formatter = JsonFormatter()

    stderr_handler = logging.StreamHandler(sys.stderr)
    stderr_handler.setFormatter(formatter)
    root_logger.addHandler(stderr_handler)

    if log_file:
        try:
            file_handler = logging.FileHandler(log_file)
            file_handler.setFormatter(formatter)
            root_logger.addHandler(file_handler)
        except OSError:
            logging.warning("Unable to set up file logging to %s. Continuing with stderr only.", log_file)

    for logger_name in ("uvicorn", "uvicorn.access", "uvicorn.error"):
        logging.getLogger(logger_name).propagate = False

    logging.debug("Logging initialized: %s mode", "DEBUG" if debug else "PRODUCTION")
