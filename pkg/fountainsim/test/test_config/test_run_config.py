import json
import os

import pytest

from fountainsim.config import EXPERIMENTS, RunConfig, SCHEMA_VERSION
from fountainsim.exceptions import ConfigError


@pytest.fixture
def fringe_dict():
    return {"schema_version": 1, "experiment": "fringe", "seed": 3, "n_atoms": 500,
            "launch": {"apogee_above_cavity": 0.11}, "grid": {"n_points": 201}}


@pytest.mark.parametrize('name', ["fig4", "fig5", "fig6", "fig7", "pump_scan", "servo", "strengths"])
def test_bundled_configs_load(name):
    run_config = RunConfig.get_default_run_config(name)
    assert run_config.experiment in EXPERIMENTS
    assert os.path.isfile(RunConfig.default_run_config_path(name))


def test_unknown_bundled_config():
    with pytest.raises(ValueError):
        RunConfig.get_default_run_config("fig99")


def test_resolved_materializes_defaults(fringe_dict):
    resolved = RunConfig.from_dict(fringe_dict).resolved()
    assert resolved["schema_version"] == SCHEMA_VERSION
    assert resolved["seed"] == 3
    assert resolved["n_atoms"] == 500
    assert resolved["launch"]["apogee_above_cavity"] == 0.11
    assert resolved["launch"]["cavity_height"] == 0.04
    assert resolved["grid"]["n_points"] == 201
    assert resolved["grid"]["span_hz"] == 20.0
    assert set(resolved) == {"schema_version", "experiment", "seed", "n_atoms", "launch", "ramsey", "detection",
                             "pumping", "grid", "sweep", "servo", "allan"}


def test_default_seed():
    assert RunConfig("strengths").resolved()["seed"] == 0


def test_with_overrides(fringe_dict):
    run_config = RunConfig.from_dict(fringe_dict)
    assert run_config.with_overrides(seed=9).resolved()["seed"] == 9
    assert run_config.with_overrides().resolved()["seed"] == 3


@pytest.mark.parametrize('change', [
    lambda d: d["launch"].update(apogee=0.1),
    lambda d: d.update(optics={}),
    lambda d: d.pop("schema_version"),
    lambda d: d.update(schema_version=2),
    lambda d: d.update(schema_version=True),
    lambda d: d.update(experiment="ramsey"),
    lambda d: d.pop("experiment"),
    lambda d: d["grid"].update(n_points=1),
    lambda d: d.update(seed=-1),
])
def test_invalid_configs(fringe_dict, change):
    change(fringe_dict)
    with pytest.raises(ConfigError):
        RunConfig.from_dict(fringe_dict)


def test_block_lookup(fringe_dict):
    run_config = RunConfig.from_dict(fringe_dict)
    assert run_config.block("pumping")["scheme"] == "two_laser"
    with pytest.raises(ConfigError):
        run_config.block("top_level")


def test_json_round_trip(fringe_dict, tmp_path):
    path = os.path.join(tmp_path, "run.json")
    run_config = RunConfig.from_dict(fringe_dict)
    run_config.to_json(path)
    with pytest.raises(FileExistsError):
        run_config.to_json(path, overwrite=False)
    run_config.to_json(path, overwrite=True)
    assert RunConfig.from_json(path).resolved() == run_config.resolved()


def test_from_json_errors(tmp_path):
    with pytest.raises(ConfigError):
        RunConfig.from_json(os.path.join(tmp_path, "missing.json"))
    broken = os.path.join(tmp_path, "broken.json")
    with open(broken, "w") as file:
        file.write("{\"schema_version\": 1,")
    with pytest.raises(ConfigError):
        RunConfig.from_json(broken)
    not_an_object = os.path.join(tmp_path, "list.json")
    with open(not_an_object, "w") as file:
        json.dump([1, 2], file)
    with pytest.raises(ConfigError):
        RunConfig.from_json(not_an_object)
