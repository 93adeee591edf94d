"""Demonstration script covering the primary bandperm flows."""

from __future__ import annotations

import os
import subprocess
import sys
from pathlib import Path


PROJECT_ROOT = Path(__file__).resolve().parents[1]
DB_PATH = PROJECT_ROOT / "bandperm.db"
WORK_DIR = PROJECT_ROOT / "demo-output"


def run_cli(*args: str, stdin: str | None = None, check: bool = True) -> subprocess.CompletedProcess[str]:
    cmd = [sys.executable, "-m", "bandperm", *args]
    print(f"$ {' '.join(cmd)}")
    env = {**os.environ, "BANDPERM_DB": str(DB_PATH)}
    result = subprocess.run(cmd, input=stdin, text=True, capture_output=True, env=env, check=check)
    print(result.stdout, end="")
    if result.stderr:
        print(result.stderr, end="", file=sys.stderr)
    return result


def main() -> None:
    if DB_PATH.exists():
        DB_PATH.unlink()
    WORK_DIR.mkdir(exist_ok=True)

    run_cli("examples")
    for name in ("shift", "intertwined-shifted", "rewire-demo"):
        document = run_cli("examples", "--name", name).stdout
        path = WORK_DIR / f"{name}.json"
        path.write_text(document, encoding="utf-8")

        run_cli("index", str(path), "--sweep=-5:6")
        run_cli("center", str(path))
        run_cli("factor", str(path), "--mode", "bc")
        run_cli("factor", str(path), "--mode", "full")
        run_cli("render", str(path))

    run_cli("render", str(WORK_DIR / "shift.json"), "--format", "dot", "--rows", "0:4")

    run_cli("config", "set", "verify_trials", "10")
    run_cli("verify", str(WORK_DIR / "rewire-demo.json"), "--table")
    run_cli("verify", "--seed", "3", "--table")
    run_cli("runs", "list")
    run_cli("runs", "show", "1")

    corrupted = '{"kind": "eventual_shift", "s": 0, "lo": 0, "images": [1, 1]}'
    result = run_cli("index", stdin=corrupted, check=False)
    print(f"corrupted document exit code: {result.returncode}")


if __name__ == "__main__":
    main()
