from __future__ import annotations

from typing import Dict

from .db import CONFIG_MINIMUMS, DEFAULT_CONFIG
from .storage import Storage


class ConfigService:
    """Integer-valued settings kept in the sqlite config table."""

    def __init__(self, storage: Storage | None = None):
        self.storage = storage or Storage()

    def _check_key(self, key: str) -> None:
        if key not in DEFAULT_CONFIG:
            raise ValueError(f"Unknown config key {key!r}; known keys: {', '.join(sorted(DEFAULT_CONFIG))}")

    def list(self) -> Dict[str, str]:
        return self.storage.list_config()

    def get(self, key: str) -> str:
        self._check_key(key)
        return self.storage.get_config(key)

    def get_int(self, key: str) -> int:
        return int(self.get(key))

    def set(self, key: str, value: str) -> None:
        self._check_key(key)
        try:
            number = int(value)
        except ValueError as exc:
            raise ValueError(f"{key} must be an integer, got {value!r}") from exc
        minimum = CONFIG_MINIMUMS[key]
        if number < minimum:
            raise ValueError(f"{key} must be at least {minimum}, got {number}")
        self.storage.set_config(key, str(number))


__all__ = ["ConfigService"]
