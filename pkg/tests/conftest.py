from __future__ import annotations

import pytest

from bandperm.db import DB_ENV


@pytest.fixture(autouse=True)
def isolated_db(tmp_path, monkeypatch):
    path = tmp_path / "bandperm.db"
    monkeypatch.setenv(DB_ENV, str(path))
    return path
