from __future__ import annotations

import pytest

from bandperm.config import ConfigService
from bandperm.fixtures import get_fixture
from bandperm.storage import Storage
from bandperm.verify import PropertyResult, VerifyConfig, VerifyRunner, run_verify


@pytest.fixture
def small_config():
    return VerifyConfig(trials=4, seed=1, sweep_radius=6, max_bandwidth=4, max_window=16, max_period=8)


def test_shift_passes_every_property(small_config):
    report = VerifyRunner(config=small_config).run(get_fixture("shift").permutation, "shift")
    assert report["passed"]
    assert report["input"] == "shift"
    names = [result["property"] for result in report["results"]]
    assert "oracle-agreement" in names and "asplund" in names and "layers-round-trip" in names
    by_name = {result["property"]: result for result in report["results"]}
    assert by_name["centering"]["checked"] == 5
    assert by_name["finite-index"]["checked"] == 4


def test_same_seed_gives_the_same_report(small_config):
    first = run_verify(config=small_config)
    second = run_verify(config=small_config)
    assert first == second
    assert first["input"] is None


def test_runner_reuse_is_deterministic(small_config):
    runner = VerifyRunner(config=small_config)
    assert runner.run() == runner.run()


def test_only_the_input_without_trials():
    config = VerifyConfig(trials=0, seed=0, sweep_radius=3, max_bandwidth=3, max_window=8, max_period=4)
    report = VerifyRunner(config=config).run(get_fixture("intertwined").permutation, "intertwined")
    by_name = {result["property"]: result for result in report["results"]}
    assert by_name["jstar-independence"]["checked"] == 1
    assert by_name["asplund"]["checked"] == 0
    assert report["passed"]


@pytest.mark.parametrize("name", ["identity", "intertwined-shifted", "rewire-demo"])
def test_fixtures_pass(small_config, name):
    report = VerifyRunner(config=small_config).run(get_fixture(name).permutation, name)
    assert report["passed"], [r for r in report["results"] if not r["passed"]]


def test_config_comes_from_storage():
    service = ConfigService(Storage())
    service.set("verify_trials", "2")
    service.set("verify_seed", "5")
    runner = VerifyRunner(service=service)
    assert (runner.config.trials, runner.config.seed) == (2, 5)
    config = VerifyConfig.from_service(service, trials=9, seed=None)
    assert (config.trials, config.seed) == (9, 5)


def test_property_result_keeps_first_failure():
    result = PropertyResult("centering")
    result.record(None)
    result.record("first", {"kind": "periodic"})
    result.record("second")
    assert (result.checked, result.failures, result.passed) == (3, 2, False)
    assert result.first_failure == {"message": "first", "instance": {"kind": "periodic"}}
