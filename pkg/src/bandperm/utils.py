from __future__ import annotations

import json
from datetime import datetime, timezone
from typing import Any, Optional


ISO_FORMAT = "%Y-%m-%dT%H:%M:%S.%fZ"


def utcnow() -> datetime:
    return datetime.now(timezone.utc)


def to_iso(dt: datetime) -> str:
    return dt.astimezone(timezone.utc).strftime(ISO_FORMAT)


def load_json(value: str) -> Any:
    return json.loads(value)


def dump_json(data: Any, *, indent: Optional[int] = None) -> str:
    return json.dumps(data, indent=indent, ensure_ascii=False)


def parse_range(value: str) -> range:
    """Parse ``lo:hi`` into range(lo, hi); hi must not be below lo."""

    parts = value.split(":")
    if len(parts) != 2:
        raise ValueError(f"range {value!r} must look like lo:hi")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ValueError(f"range {value!r} must have integer bounds") from exc
    if hi < lo:
        raise ValueError(f"range {value!r} is reversed")
    return range(lo, hi)


__all__ = ["ISO_FORMAT", "dump_json", "load_json", "parse_range", "to_iso", "utcnow"]
