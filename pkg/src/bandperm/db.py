from __future__ import annotations

import os
import sqlite3
from pathlib import Path
from threading import Lock
from typing import Callable, Optional, TypeVar


SCHEMA = """
CREATE TABLE IF NOT EXISTS config (
    key TEXT PRIMARY KEY,
    value TEXT NOT NULL
);

CREATE TABLE IF NOT EXISTS verify_runs (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    seed INTEGER NOT NULL,
    trials INTEGER NOT NULL,
    input_name TEXT,
    passed INTEGER NOT NULL,
    report TEXT NOT NULL,
    created_at TEXT NOT NULL
);
"""


DEFAULT_CONFIG = {
    "verify_trials": "50",
    "verify_seed": "0",
    "sweep_radius": "25",
    "max_bandwidth": "6",
    "max_window": "64",
    "max_period": "24",
}

# Smallest accepted value per key; generators draw a period from [1, max_period].
CONFIG_MINIMUMS = {key: 0 for key in DEFAULT_CONFIG} | {"max_period": 1}

DB_ENV = "BANDPERM_DB"


T = TypeVar("T")


class Database:
    def __init__(self, db_path: Path):
        self.db_path = db_path
        self._lock = Lock()
        self._initialized = False

    def init(self) -> None:
        with self._lock:
            if self._initialized:
                return
            conn = self._connect()
            try:
                conn.executescript(SCHEMA)
                self._ensure_defaults(conn)
                conn.commit()
            finally:
                conn.close()
            self._initialized = True

    def _connect(self) -> sqlite3.Connection:
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        conn.execute("PRAGMA journal_mode=WAL")
        return conn

    def connection(self) -> sqlite3.Connection:
        self.init()
        return self._connect()

    def transaction(self, func: Callable[[sqlite3.Connection], "T"]) -> "T":
        conn = self.connection()
        try:
            result = func(conn)
            conn.commit()
            return result
        except Exception:
            conn.rollback()
            raise
        finally:
            conn.close()

    def _ensure_defaults(self, conn: sqlite3.Connection) -> None:
        for key, value in DEFAULT_CONFIG.items():
            conn.execute(
                "INSERT OR IGNORE INTO config(key, value) VALUES(?, ?)",
                (key, value),
            )


def default_path() -> Path:
    return Path(os.environ.get(DB_ENV) or "bandperm.db")


def get_database(db_path: Optional[Path] = None) -> Database:
    db = Database(db_path or default_path())
    db.init()
    return db


__all__ = ["CONFIG_MINIMUMS", "DB_ENV", "DEFAULT_CONFIG", "Database", "default_path", "get_database"]
