"""
Structured logging for sigma-spectra.

Records go to stderr (stdout carries reports) and optionally to a rotating
file. Search code attaches the instance label and k to its records so a log
line can be matched to the report entry it explains.
"""

import json
import logging
import logging.handlers
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, MutableMapping, Optional, Tuple

from core.config import LoggingConfig

TEXT_LAYOUT = '%(asctime)s %(levelname)-8s %(name)s: %(message)s'
TEXT_DATE = '%H:%M:%S'

# JSON key -> LogRecord attribute
RECORD_FIELDS = (
    ('level', 'levelname'),
    ('logger', 'name'),
    ('module', 'module'),
    ('function', 'funcName'),
    ('line', 'lineno'),
)


class JSONFormatter(logging.Formatter):
    """One JSON object per record; bound context goes under "extra"."""

    def format(self, record: logging.LogRecord) -> str:
        entry: Dict[str, Any] = {
            'timestamp': datetime.fromtimestamp(record.created, timezone.utc).isoformat(),
            'message': record.getMessage(),
        }
        for key, attr in RECORD_FIELDS:
            entry[key] = getattr(record, attr)

        context = getattr(record, 'extra_data', None)
        if context:
            entry['extra'] = context
        if record.exc_info:
            entry['exception'] = self.formatException(record.exc_info)
        return json.dumps(entry, default=str)


def _formatter(use_json: bool) -> logging.Formatter:
    return JSONFormatter() if use_json else logging.Formatter(TEXT_LAYOUT, datefmt=TEXT_DATE)


def setup_logging(settings: Optional[LoggingConfig] = None, level: Optional[str] = None) -> None:
    """
    Configure the root logger from the logging section of the config.

    Args:
        settings: Logging section; defaults apply when None
        level: Overrides settings.level (the --log-level flag)
    """
    settings = settings or LoggingConfig()
    numeric = getattr(logging, (level or settings.level).upper())
    formatter = _formatter(settings.format == "json")

    handlers = [logging.StreamHandler(sys.stderr)]
    if settings.file:
        Path(settings.file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.handlers.RotatingFileHandler(
            settings.file,
            maxBytes=settings.max_size_mb * 1024 * 1024,
            backupCount=settings.retention_days,
            encoding='utf-8',
        ))

    root = logging.getLogger()
    root.handlers.clear()
    root.setLevel(numeric)
    for handler in handlers:
        handler.setLevel(numeric)
        handler.setFormatter(formatter)
        root.addHandler(handler)


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)


def log_with_context(logger: logging.Logger, level: str, message: str, **context: Any) -> None:
    """Log message at level with context fields attached under "extra"."""
    logger.log(getattr(logging, level.upper()), message, extra={'extra_data': context})


class ContextAdapter(logging.LoggerAdapter):
    """Merges bound context into each record; per-call fields win."""

    def process(self, msg: Any, kwargs: MutableMapping[str, Any]) -> Tuple[Any, MutableMapping[str, Any]]:
        extra = kwargs.setdefault('extra', {})
        extra['extra_data'] = {**self.extra, **extra.get('extra_data', {})}
        return msg, kwargs


def get_component_logger(component_name: str, **context: Any) -> ContextAdapter:
    """
    Logger for one unit of work, e.g. the search for a single (instance, k).

    Args:
        component_name: Logger name
        **context: Fields included in every record

    Returns:
        ContextAdapter bound to the context
    """
    return ContextAdapter(get_logger(component_name), {'component': component_name, **context})
