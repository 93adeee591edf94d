from __future__ import annotations

import pytest

from bandperm.config import ConfigService
from bandperm.db import DEFAULT_CONFIG, get_database
from bandperm.storage import Storage


@pytest.fixture
def storage(tmp_path):
    return Storage(get_database(tmp_path / "runs.db"))


def test_defaults_are_seeded(storage):
    assert storage.list_config() == DEFAULT_CONFIG
    assert storage.get_config("verify_trials") == "50"


def test_config_service_round_trip(storage):
    service = ConfigService(storage)
    service.set("verify_trials", "7")
    assert service.get("verify_trials") == "7"
    assert service.get_int("verify_trials") == 7
    assert service.list()["verify_trials"] == "7"


@pytest.mark.parametrize(
    ("key", "value"),
    [("retries", "3"), ("verify_seed", "abc"), ("max_window", "-1"), ("max_period", "0"), ("max_period", "-3")],
)
def test_config_service_rejects_bad_values(storage, key, value):
    with pytest.raises(ValueError):
        ConfigService(storage).set(key, value)


def test_unknown_key_cannot_be_read(storage):
    with pytest.raises(ValueError):
        ConfigService(storage).get("poll_interval")


def test_record_and_list_runs(storage):
    report = {"seed": 3, "trials": 2, "input": "shift", "results": [], "passed": True}
    first = storage.record_run(report)
    second = storage.record_run({**report, "passed": False, "input": None})
    assert first.ok and not second.ok
    assert first.report_data() == report
    assert [run.id for run in storage.list_runs()] == [second.id, first.id]
    assert [run.id for run in storage.list_runs(limit=1)] == [second.id]
    assert storage.get_run(first.id).input_name == "shift"
    assert storage.get_run(999) is None


def test_default_database_follows_environment(isolated_db):
    Storage().set_config("sweep_radius", "4")
    assert isolated_db.exists()
    assert Storage().get_config("sweep_radius") == "4"


def test_smallest_accepted_values(storage):
    service = ConfigService(storage)
    service.set("max_period", "1")
    service.set("max_bandwidth", "0")
    assert (service.get_int("max_period"), service.get_int("max_bandwidth")) == (1, 0)
