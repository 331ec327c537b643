# alkkit/utils.py
"""
Utility functions and robust logging for alk-kit.
"""
from __future__ import annotations
import json, logging, logging.handlers, queue, atexit
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence, Tuple

from .config import LOG_DIR, LOG_JSON, LOG_LEVEL

_CONTEXT_FIELDS = ("genus", "source", "step")

Point = Tuple[Fraction, Fraction]


def as_fraction(value: Any) -> Fraction:
    """
    Parse an exact rational: an int, a Fraction, a [num, den] pair or a "p/q" string.
    Floats are refused so that no binary rounding leaks into the pipeline.
    """
    if isinstance(value, bool):
        raise ValueError("Booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, (list, tuple)) and len(value) == 2:
        num, den = value
        if isinstance(num, int) and isinstance(den, int) and not isinstance(num, bool) and den != 0:
            return Fraction(num, den)
    raise ValueError(f"Not an exact rational: {value!r}")


def fraction_pair(value: Fraction) -> list[int]:
    """Serialize a rational as [numerator, denominator]."""
    value = Fraction(value)
    return [value.numerator, value.denominator]


def as_point(value: Sequence[Any]) -> Point:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ValueError(f"Not a point: {value!r}")
    return (as_fraction(value[0]), as_fraction(value[1]))


def sign_of(x: Any) -> int:
    return (x > 0) - (x < 0)


def cross2(u: Point, v: Point) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def sub2(u: Point, v: Point) -> Point:
    return (u[0] - v[0], u[1] - v[1])


def lerp2(p: Point, q: Point, s: Fraction) -> Point:
    return (p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1]))


def canonical_json(doc: Any) -> str:
    """Byte-stable JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


# --- Logging ---
# Library code logs through "alkkit" or a bound ContextAdapter. Records go
# through a queue so the corpus thread pool never blocks on handler I/O.

class _LogState:
    listener: logging.handlers.QueueListener | None = None
    started = False


def _fill_context(record: logging.LogRecord) -> bool:
    for name in _CONTEXT_FIELDS:
        if not hasattr(record, name):
            setattr(record, name, None)
    return True


class _RecordFormatter(logging.Formatter):
    """One formatter, two renderings: a JSON object per line or `key=value` text."""

    def __init__(self, as_json: bool):
        super().__init__(datefmt="%Y-%m-%dT%H:%M:%S%z")
        self.as_json = as_json

    def format(self, record: logging.LogRecord) -> str:
        context = {k: str(getattr(record, k)) for k in _CONTEXT_FIELDS if getattr(record, k, None) is not None}
        when = self.formatTime(record, self.datefmt)
        if self.as_json:
            doc = {"time": when, "level": record.levelname, "message": record.getMessage(),
                   "at": f"{record.name}.{record.funcName}:{record.lineno}", **context}
            if record.exc_info:
                doc["exception"] = self.formatException(record.exc_info)
            return json.dumps(doc, sort_keys=True)
        tags = " ".join(f"{k}={v}" for k, v in context.items())
        text = f"{when} {record.levelname:<7} {tags + ' ' if tags else ''}{record.getMessage()}"
        if record.exc_info:
            text += "\n" + self.formatException(record.exc_info)
        return text


def _handlers_for(app_name: str, log_dir: Path | None, as_json: bool, level: int) -> list:
    # stderr only; stdout carries the CLI's JSON result
    console = logging.StreamHandler()
    console.setFormatter(_RecordFormatter(as_json))
    out = [console]
    if log_dir is not None:
        log_dir.mkdir(parents=True, exist_ok=True)
        rotating = logging.handlers.RotatingFileHandler(
            log_dir / f"{app_name}.jsonl", maxBytes=2 * 1024 * 1024, backupCount=3, encoding="utf-8")
        rotating.setFormatter(_RecordFormatter(True))
        out.append(rotating)
    for h in out:
        h.setLevel(level)
        h.addFilter(_fill_context)
    return out


def _level_number(level: int | str | None) -> int:
    if isinstance(level, int):
        return level
    found = logging.getLevelName(str(level or LOG_LEVEL).upper())
    return found if isinstance(found, int) else logging.WARNING


def setup_logging(
    app_name: str = "alkkit",
    level: int | str | None = None,
    json_mode: bool | None = None,
    log_dir: str | Path | None = None,
    reinitialize: bool = False,
):
    """
    Route the package logger through a QueueHandler.

    Defaults come from ALK_LOG_LEVEL, ALK_LOG_JSON and ALK_LOG_DIR. Calling it
    again is a no-op unless `reinitialize` is set (the CLI does that for -v).
    """
    if _LogState.started and not reinitialize:
        return
    if _LogState.listener is not None:
        _LogState.listener.stop()

    number = _level_number(level)
    as_json = LOG_JSON if json_mode is None else json_mode
    target = log_dir or LOG_DIR
    records: queue.Queue = queue.Queue()

    pkg = logging.getLogger(app_name)
    pkg.handlers.clear()
    pkg.addHandler(logging.handlers.QueueHandler(records))
    pkg.setLevel(number)
    pkg.propagate = False

    _LogState.listener = logging.handlers.QueueListener(
        records, *_handlers_for(app_name, Path(target) if target else None, as_json, number),
        respect_handler_level=True)
    _LogState.listener.start()
    if not _LogState.started:
        atexit.register(lambda: _LogState.listener and _LogState.listener.stop())
    _LogState.started = True
    logging.getLogger("matplotlib").setLevel(logging.WARNING)


setup_logging()

logger = logging.getLogger("alkkit")


class ContextAdapter(logging.LoggerAdapter):
    """
    Logger carrying genus/source/step. Per-call `extra` wins over bound values.

        log = get_context_logger(step="crossings").bind(source="movie.json")
    """

    def process(self, msg, kwargs):
        merged = {**self.extra, **kwargs.get("extra", {})}
        kwargs["extra"] = {k: v for k, v in merged.items() if v is not None}
        return msg, kwargs

    def bind(self, **fields) -> "ContextAdapter":
        return ContextAdapter(self.logger, {**self.extra, **{k: v for k, v in fields.items() if v is not None}})


def get_context_logger(genus: int | None = None, source: str | None = None, step: str | None = None) -> ContextAdapter:
    return ContextAdapter(logger, {}).bind(genus=genus, source=source, step=step)
