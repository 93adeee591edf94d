from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from .db import DEFAULT_CONFIG, Database, get_database
from .utils import dump_json, load_json, to_iso, utcnow


@dataclass
class VerifyRun:
    id: int
    seed: int
    trials: int
    input_name: Optional[str]
    passed: int
    report: str
    created_at: str

    @property
    def ok(self) -> bool:
        return bool(self.passed)

    def report_data(self) -> Dict[str, Any]:
        return load_json(self.report)


class Storage:
    def __init__(self, db: Optional[Database] = None):
        self.db = db or get_database()

    # Verification runs --------------------------------------------------
    def record_run(self, report: Dict[str, Any]) -> VerifyRun:
        created_at = to_iso(utcnow())

        def _insert(conn):
            cursor = conn.execute(
                """
                INSERT INTO verify_runs (seed, trials, input_name, passed, report, created_at)
                VALUES (?, ?, ?, ?, ?, ?)
                """,
                (
                    report["seed"],
                    report["trials"],
                    report.get("input"),
                    int(bool(report["passed"])),
                    dump_json(report),
                    created_at,
                ),
            )
            return cursor.lastrowid

        run_id = self.db.transaction(_insert)
        run = self.get_run(run_id)
        assert run is not None
        return run

    def get_run(self, run_id: int) -> Optional[VerifyRun]:
        def _fetch(conn):
            row = conn.execute("SELECT * FROM verify_runs WHERE id = ?", (run_id,)).fetchone()
            return VerifyRun(**row) if row else None

        return self.db.transaction(_fetch)

    def list_runs(self, limit: Optional[int] = None) -> List[VerifyRun]:
        def _list(conn):
            query = "SELECT * FROM verify_runs ORDER BY id DESC"
            if limit is not None:
                rows = conn.execute(query + " LIMIT ?", (limit,)).fetchall()
            else:
                rows = conn.execute(query).fetchall()
            return [VerifyRun(**row) for row in rows]

        return self.db.transaction(_list)

    # Config -------------------------------------------------------------
    def get_config(self, key: str) -> str:
        def _get(conn):
            row = conn.execute("SELECT value FROM config WHERE key = ?", (key,)).fetchone()
            if row:
                return row["value"]
            return DEFAULT_CONFIG[key]

        return self.db.transaction(_get)

    def set_config(self, key: str, value: str) -> None:
        def _set(conn):
            conn.execute(
                "INSERT INTO config(key, value) VALUES(?, ?) ON CONFLICT(key) DO UPDATE SET value = excluded.value",
                (key, value),
            )

        self.db.transaction(_set)

    def list_config(self) -> Dict[str, str]:
        def _list(conn):
            rows = conn.execute("SELECT key, value FROM config").fetchall()
            cfg = {row["key"]: row["value"] for row in rows}
            for key, default in DEFAULT_CONFIG.items():
                cfg.setdefault(key, default)
            return cfg

        return self.db.transaction(_list)


__all__ = ["Storage", "VerifyRun"]
