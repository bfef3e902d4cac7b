import filecmp
import json
import os

import pandas as pd
import pytest

from fountainsim.cli import (EXIT_CONFIG, EXIT_LOCK_LOST, EXIT_OK, EXIT_PHYSICS, SUBCOMMANDS, build_parser,
                             load_run_config, main)
from fountainsim.config import RunConfig
from fountainsim.exceptions import ConfigError


@pytest.fixture
def small_fringe():
    return {"experiment": "fringe", "seed": 2, "n_atoms": 500,
            "launch": {"apogee_above_cavity": 0.110}, "pumping": {"scheme": "one_laser"},
            "detection": {"n_cycles": 4, "n_repeats": 50},
            "grid": {"span_hz": 20.0, "n_points": 401}}


@pytest.mark.parametrize('command', list(SUBCOMMANDS))
def test_default_configs_match_subcommands(command):
    assert load_run_config(command).experiment == command.replace("-", "_")


def test_parser_defaults():
    args = build_parser().parse_args(["fringe"])
    assert args.config is None and args.seed is None and args.out is None
    assert args.threads == 1
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_strengths(tmp_path, capsys):
    out = os.path.join(tmp_path, "strengths")
    assert main(["strengths", "--out", out]) == EXIT_OK
    printed = capsys.readouterr().out.split()
    assert printed == [os.path.join(out, "results", "strengths.csv"), os.path.join(out, "results", "branching.csv")]
    strengths = pd.read_csv(printed[0])
    assert not strengths.empty


def test_fringe_run(tmp_path, write_config, small_fringe):
    out = os.path.join(tmp_path, "fringe")
    assert main(["fringe", "--config", write_config(small_fringe), "--out", out]) == EXIT_OK
    with open(os.path.join(out, "results", "metrics.json")) as file:
        metrics = json.load(file)
    assert metrics["metrics"]["fwhm_hz"] == pytest.approx(metrics["predicted_fwhm_hz"], rel=0.1)
    assert metrics["predicted_fwhm_hz"] == pytest.approx(1 / (2 * 0.29952), rel=0.02)
    with open(os.path.join(out, "config.json")) as file:
        assert json.load(file)["n_atoms"] == 500
    for name in ("pattern.csv", "pattern_meta.json", "transits.csv", "detection_cycles.csv"):
        assert os.path.isfile(os.path.join(out, "results", name))


def test_fringe_outputs_do_not_depend_on_threads(tmp_path, write_config, small_fringe):
    config_path = write_config(small_fringe)
    first = os.path.join(tmp_path, "one")
    second = os.path.join(tmp_path, "two")
    assert main(["fringe", "--config", config_path, "--out", first, "--threads", "1"]) == EXIT_OK
    assert main(["fringe", "--config", config_path, "--out", second, "--threads", "2"]) == EXIT_OK
    for name in ("pattern.csv", "transits.csv", "detection_cycles.csv", "metrics.json"):
        assert filecmp.cmp(os.path.join(first, "results", name), os.path.join(second, "results", name),
                           shallow=False), name


def test_seed_changes_the_pattern(tmp_path, write_config, small_fringe):
    config_path = write_config(small_fringe)
    first = os.path.join(tmp_path, "a")
    second = os.path.join(tmp_path, "b")
    assert main(["fringe", "--config", config_path, "--out", first, "--seed", "1"]) == EXIT_OK
    assert main(["fringe", "--config", config_path, "--out", second, "--seed", "5"]) == EXIT_OK
    assert not filecmp.cmp(os.path.join(first, "results", "transits.csv"),
                           os.path.join(second, "results", "transits.csv"), shallow=False)


def test_fountain_too_low(tmp_path, write_config, small_fringe, capsys):
    small_fringe["launch"] = {"apogee_above_cavity": -0.05}
    code = main(["fringe", "--config", write_config(small_fringe), "--out", os.path.join(tmp_path, "low")])
    assert code == EXIT_PHYSICS
    assert "FountainTooLow" in capsys.readouterr().err


@pytest.mark.parametrize('change', [
    lambda d: d["launch"].update(apogee=0.1),
    lambda d: d.update(experiment="leakage"),
    lambda d: d.update(schema_version=3),
])
def test_configuration_errors(tmp_path, write_config, small_fringe, change):
    change(small_fringe)
    code = main(["fringe", "--config", write_config(small_fringe), "--out", os.path.join(tmp_path, "bad")])
    assert code == EXIT_CONFIG


def test_missing_config_file(tmp_path):
    assert main(["fringe", "--config", os.path.join(tmp_path, "absent.json")]) == EXIT_CONFIG


def test_negative_seed(tmp_path):
    assert main(["strengths", "--seed", "-1", "--out", os.path.join(tmp_path, "s")]) == EXIT_CONFIG


def test_load_run_config_mismatch(write_config, small_fringe):
    with pytest.raises(ConfigError):
        load_run_config("servo", write_config(small_fringe))


def test_servo_lock_lost(tmp_path, write_config, capsys):
    config_path = write_config({"experiment": "servo", "launch": {"apogee_above_cavity": 0.110},
                                "servo": {"gain": 100.0, "n_cycles": 50, "initial_offset_hz": 0.4}})
    assert main(["servo", "--config", config_path, "--out", os.path.join(tmp_path, "servo")]) == EXIT_LOCK_LOST
    assert "cycle 1" in capsys.readouterr().err


def test_noiseless_servo_converges(tmp_path, write_config, noiseless_detection):
    out = os.path.join(tmp_path, "servo")
    config_path = write_config({"experiment": "servo", "launch": {"apogee_above_cavity": 0.110},
                                "detection": noiseless_detection,
                                "servo": {"n_cycles": 200, "initial_offset_hz": 0.4},
                                "allan": {"taus_s": [4.0, 8.0]}})
    assert main(["servo", "--config", config_path, "--out", out]) == EXIT_OK
    with open(os.path.join(out, "results", "servo_summary.json")) as file:
        summary = json.load(file)
    assert abs(summary["final_offset_hz"]) < 1e-3
    assert summary["tau0_s"] == 2.0
    clock_run = pd.read_csv(os.path.join(out, "results", "clock_run.csv"))
    assert len(clock_run) == 200


def test_bundled_servo_allan_slope(tmp_path):
    out = os.path.join(tmp_path, "servo")
    assert main(["servo", "--out", out]) == EXIT_OK
    with open(os.path.join(out, "results", "servo_summary.json")) as file:
        summary = json.load(file)
    assert summary["allan_loglog_slope"] == pytest.approx(-0.5, abs=0.2)
    allan = pd.read_csv(os.path.join(out, "results", "allan.csv"))
    assert len(allan) == 5


@pytest.mark.parametrize('name, fwhm_hz', [("fig4", 1.7), ("fig5", 2.3)])
def test_bundled_fringe_configs(tmp_path, name, fwhm_hz):
    out = os.path.join(tmp_path, name)
    assert main(["fringe", "--config", RunConfig.default_run_config_path(name), "--out", out]) == EXIT_OK
    with open(os.path.join(out, "results", "metrics.json")) as file:
        metrics = json.load(file)
    assert metrics["metrics"]["fwhm_hz"] == pytest.approx(fwhm_hz, abs=0.1)
    cycles = pd.read_csv(os.path.join(out, "results", "detection_cycles.csv"))
    assert cycles["signal"].notna().all()


def test_weak_leakage_barely_changes_the_central_fringe(tmp_path, write_config):
    config_path = write_config({"experiment": "leakage", "seed": 7, "n_atoms": 800,
                                "launch": {"apogee_above_cavity": 0.30657, "interaction_length": 0.0049},
                                "grid": {"span_hz": 14.0, "n_points": 561},
                                "sweep": {"leak_ratios": [0.0, 0.0005, 0.002], "leak_phases_rad": [0.0]}})
    out = os.path.join(tmp_path, "leakage")
    assert main(["leakage", "--config", config_path, "--out", out]) == EXIT_OK
    ratios = pd.read_csv(os.path.join(out, "results", "leakage_summary.csv"))["central_to_adjacent_ratio"]
    assert ratios[0] >= 1.0
    assert abs(ratios[1] - 1.0) < abs(ratios[2] - 1.0)
    with open(os.path.join(out, "results", "leakage.json")) as file:
        collapsed = json.load(file)["collapsed_leak_ratios"]
    assert 0.0 not in collapsed
    assert 0.002 in collapsed


def test_servo_outputs_do_not_depend_on_threads(tmp_path, write_config):
    config_path = write_config({"experiment": "servo", "seed": 3, "n_atoms": 500,
                                "launch": {"apogee_above_cavity": 0.110},
                                "servo": {"fringe_model": "pattern", "n_cycles": 200, "initial_offset_hz": 0.2},
                                "allan": {"taus_s": [4.0, 8.0]}})
    first = os.path.join(tmp_path, "one")
    second = os.path.join(tmp_path, "two")
    assert main(["servo", "--config", config_path, "--out", first, "--threads", "1"]) == EXIT_OK
    assert main(["servo", "--config", config_path, "--out", second, "--threads", "3"]) == EXIT_OK
    for name in ("clock_run.csv", "allan.csv", "servo_summary.json"):
        assert filecmp.cmp(os.path.join(first, "results", name), os.path.join(second, "results", name),
                           shallow=False), name
