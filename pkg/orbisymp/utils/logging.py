from __future__ import annotations

import atexit
import json
import logging
import os
from contextlib import contextmanager
from contextvars import ContextVar, Token
from dataclasses import dataclass
from datetime import datetime, timezone
from logging.handlers import QueueHandler, QueueListener, RotatingFileHandler
from pathlib import Path
from queue import SimpleQueue
from typing import Any, Dict, Iterator, List, Optional

import numpy as np

_LOG_CONTEXT: ContextVar[Dict[str, Any]] = ContextVar("orbisymp_log_context", default={})

# Attributes every LogRecord carries; anything else on a record came from ``extra=``.
_STANDARD_ATTRS = frozenset(logging.LogRecord("", 0, "", 0, "", None, None).__dict__) | {
    "message",
    "asctime",
    "service",
    "log_context",
}

_FILE_TARGET_OFF = {"", "stdout", "stderr", "none", "off"}


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return str(value)


class StructuredJsonFormatter(logging.Formatter):
    """One JSON object per record; ``extra=`` fields go under ``extra``, bound context under ``context``."""

    def format(self, record: logging.LogRecord) -> str:
        payload: Dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created, tz=timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "function": record.funcName,
            "line": record.lineno,
        }
        service = getattr(record, "service", None)
        if service:
            payload["service"] = service
        context = getattr(record, "log_context", None)
        if context:
            payload["context"] = context
        extra = {
            key: value
            for key, value in record.__dict__.items()
            if key not in _STANDARD_ATTRS and not key.startswith("_")
        }
        if extra:
            payload["extra"] = extra
        if record.exc_info:
            payload["exception"] = self.formatException(record.exc_info)
        return json.dumps(payload, default=_jsonable, ensure_ascii=False)


def get_log_context() -> Dict[str, Any]:
    return dict(_LOG_CONTEXT.get())


def bind_log_context(**values: Any) -> Token:
    """Add fields such as suite, check or seed to every record logged from the current context."""

    merged = get_log_context()
    merged.update({key: value for key, value in values.items() if value is not None})
    return _LOG_CONTEXT.set(merged)


def clear_log_context(token: Token | None = None) -> None:
    if token is None:
        _LOG_CONTEXT.set({})
    else:
        _LOG_CONTEXT.reset(token)


@contextmanager
def log_context(**values: Any) -> Iterator[None]:
    token = bind_log_context(**values)
    try:
        yield
    finally:
        clear_log_context(token)


class _StampFilter(logging.Filter):
    """Runs in the emitting thread, so the context variable is still visible."""

    def __init__(self, service: str) -> None:
        super().__init__()
        self.service = service

    def filter(self, record: logging.LogRecord) -> bool:
        record.service = self.service
        context = get_log_context()
        if context:
            record.log_context = context
        return True


@dataclass(frozen=True)
class _LogTargets:
    level: str
    file: Optional[Path]
    max_bytes: int
    backup_count: int

    @classmethod
    def from_env(cls, level: Optional[str] = None) -> "_LogTargets":
        raw_file = os.getenv("ORBISYMP_LOG_FILE", "").strip()
        return cls(
            level=(level or os.getenv("ORBISYMP_LOG_LEVEL") or "INFO").upper(),
            file=None if raw_file.lower() in _FILE_TARGET_OFF else Path(raw_file).expanduser(),
            max_bytes=_env_int("ORBISYMP_LOG_FILE_MAX_BYTES", 5 * 1024 * 1024),
            backup_count=_env_int("ORBISYMP_LOG_FILE_BACKUP_COUNT", 5),
        )

    def handlers(self) -> List[logging.Handler]:
        formatter = StructuredJsonFormatter()
        # stderr only: stdout carries the CLI's JSON output
        handlers: List[logging.Handler] = [logging.StreamHandler()]
        if self.file is not None:
            self.file.parent.mkdir(parents=True, exist_ok=True)
            handlers.append(RotatingFileHandler(self.file, maxBytes=self.max_bytes, backupCount=self.backup_count))
        for handler in handlers:
            handler.setLevel(self.level)
            handler.setFormatter(formatter)
        return handlers


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, "")
    return int(raw) if raw.isdigit() else default


class _LoggingState:
    def __init__(self) -> None:
        self.queue: SimpleQueue[logging.LogRecord] = SimpleQueue()
        self.listener: Optional[QueueListener] = None
        self.stamp: Optional[_StampFilter] = None

    @property
    def configured(self) -> bool:
        return self.stamp is not None

    def stop(self) -> None:
        if self.listener is not None:
            self.listener.stop()
            self.listener = None


_STATE = _LoggingState()


def setup_logging(service: str = "orbisymp", level: Optional[str] = None) -> None:
    """
    Route the root logger through a queue to stderr (and ``ORBISYMP_LOG_FILE`` when set).

    Idempotent: a second call only renames the service stamped on records.
    """

    if _STATE.stamp is not None:
        _STATE.stamp.service = service
        return

    targets = _LogTargets.from_env(level)
    queue_handler = QueueHandler(_STATE.queue)
    _STATE.stamp = _StampFilter(service)
    queue_handler.addFilter(_STATE.stamp)

    root = logging.getLogger()
    root.handlers = [queue_handler]
    root.setLevel(targets.level)

    _STATE.listener = QueueListener(_STATE.queue, *targets.handlers(), respect_handler_level=True)
    _STATE.listener.start()
    atexit.register(_STATE.stop)


def get_logger(name: str) -> logging.Logger:
    if not _STATE.configured:
        setup_logging()
    return logging.getLogger(name)
