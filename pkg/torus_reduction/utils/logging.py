import logging
from typing import Any, Dict, Union

import click

SUCCESS_LOG_LEVEL = logging.INFO + 1
logging.addLevelName(SUCCESS_LOG_LEVEL, "SUCCESS")

LEVEL_COLORS: Dict[str, str] = {
    "DEBUG": "blue",
    "SUCCESS": "green",
    "WARNING": "yellow",
    "ERROR": "red",
    "CRITICAL": "red",
}


class ClickHandler(logging.Handler):
    """
    Writes records to stderr through ``click.echo`` with a colored level prefix.
    """

    def emit(self, record: logging.LogRecord):
        try:
            message = self.format(record)
            level = record.levelname
            if level in LEVEL_COLORS:
                prefix = click.style(f"{level}:", fg=LEVEL_COLORS[level], bold=True)
                message = f"{prefix} {message}"

            click.echo(message, err=True)
        except Exception:
            self.handleError(record)


class EngineLogger(logging.Logger):
    def success(self, message: str, *args: Any, **kwargs: Any):
        if self.isEnabledFor(SUCCESS_LOG_LEVEL):
            self._log(SUCCESS_LOG_LEVEL, message, args, **kwargs)

    def set_level(self, level: Union[str, int]):
        if isinstance(level, str):
            name = level.upper()
            level = logging.getLevelName(name)
            if not isinstance(level, int):
                raise ValueError(f"Unknown log level '{name}'.")

        self.setLevel(level)


def _get_logger(name: str) -> EngineLogger:
    original_class = logging.getLoggerClass()
    logging.setLoggerClass(EngineLogger)
    try:
        _logger = logging.getLogger(name)
    finally:
        logging.setLoggerClass(original_class)

    if not _logger.handlers:
        handler = ClickHandler()
        handler.setFormatter(logging.Formatter("%(message)s"))
        _logger.addHandler(handler)
        _logger.propagate = False
        _logger.setLevel(logging.INFO)

    return _logger  # type: ignore[return-value]


logger = _get_logger("torus_reduction")

__all__ = ["logger", "EngineLogger", "SUCCESS_LOG_LEVEL"]
