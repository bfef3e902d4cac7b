import numpy as np
import pytest

from fountainsim.ballistics import LaunchConfig
from fountainsim.exceptions import FountainTooLow, GridTooCoarse, NoSurvivingAtoms
from fountainsim.interrogation import FringePattern, RamseyConfig, fringe_metrics, pattern, ramsey_closed_form


@pytest.fixture(scope="module")
def launch_11cm():
    return LaunchConfig.from_apogee(0.110, n_atoms=1000)


@pytest.fixture(scope="module")
def launch_50cm():
    return LaunchConfig.from_apogee(0.30657, interaction_length=0.0049, n_atoms=800)


@pytest.fixture(scope="module")
def fringe_11cm(launch_11cm):
    return pattern(RamseyConfig(), launch_11cm, np.linspace(-10, 10, 401), seed=4)


def _ratio(launch, leak_ratio, leak_phase=0.0):
    cfg = RamseyConfig(leak_ratio=leak_ratio, leak_phase_rad=leak_phase)
    fringe = pattern(cfg, launch, np.linspace(-7, 7, 561), seed=7)
    return fringe_metrics(fringe).central_to_adjacent_ratio


def test_central_fringe_width(fringe_11cm):
    metrics = fringe_metrics(fringe_11cm)
    assert metrics.fwhm_hz == pytest.approx(1.7, abs=0.1)
    assert abs(metrics.peak_detuning_hz) <= 0.05
    assert metrics.peak_probability > 0.9
    assert metrics.central_to_adjacent_ratio >= 1.0
    assert set(metrics.side_amplitudes) == {-2, -1, 1, 2}


def test_pattern_metadata(fringe_11cm, launch_11cm):
    meta = fringe_11cm.metadata
    assert meta["n_atoms"] == 1000
    assert 0 < meta["n_survivors"] <= 1000
    assert meta["survival_fraction"] == pytest.approx(meta["n_survivors"] / 1000)
    assert meta["big_t_s"] == pytest.approx(0.2995, abs=1e-3)
    assert meta["seed"] == 4
    assert list(fringe_11cm.to_frame().columns) == ["detuning_hz", "probability"]


def test_pattern_does_not_depend_on_threads(launch_11cm, fringe_11cm):
    threaded = pattern(RamseyConfig(), launch_11cm, np.linspace(-10, 10, 401), seed=4, threads=3)
    np.testing.assert_array_equal(threaded.probabilities, fringe_11cm.probabilities)


def test_pattern_depends_on_seed(launch_11cm, fringe_11cm):
    other = pattern(RamseyConfig(), launch_11cm, np.linspace(-10, 10, 401), seed=5)
    assert not np.array_equal(other.probabilities, fringe_11cm.probabilities)


def test_unperturbed_pattern_is_symmetric(launch_11cm):
    half = np.linspace(0.0, 10.0, 201)
    grid = np.concatenate([-half[:0:-1], half])
    fringe = pattern(RamseyConfig(), launch_11cm, grid, seed=4)
    np.testing.assert_allclose(fringe.probabilities, fringe.probabilities[::-1], atol=1e-10)


def test_velocity_spread_washes_out_the_outer_fringes(launch_11cm):
    def outer_contrast(velocity_sigma):
        fringe = pattern(RamseyConfig(velocity_sigma=velocity_sigma), launch_11cm, np.linspace(-10, 10, 401), seed=4)
        metrics = fringe_metrics(fringe)
        return np.mean([metrics.side_amplitudes[k] for k in (-2, 2)]) / metrics.central_amplitude

    assert outer_contrast(0.05) < outer_contrast(0.002)


def test_leakage_collapses_the_central_fringe(launch_50cm):
    unperturbed = _ratio(launch_50cm, 0.0)
    weak = _ratio(launch_50cm, 0.0005)
    strong = _ratio(launch_50cm, 0.002)
    assert unperturbed >= 1.0
    assert strong < 1.0
    assert abs(weak - 1.0) < abs(strong - 1.0)


def test_single_velocity_metrics():
    grid = np.linspace(-6, 6, 2401)
    b = np.pi / 2 / 1e-3
    fringe = FringePattern(grid, ramsey_closed_form(2 * np.pi * grid, b, 1e-3, 0.299), {"big_t_s": 0.3})
    metrics = fringe_metrics(fringe)
    assert metrics.fwhm_hz == pytest.approx(1 / 0.6, rel=1e-2)
    assert metrics.central_amplitude == pytest.approx(1.0, abs=1e-3)
    assert metrics.peak_detuning_hz == pytest.approx(0.0, abs=1e-9)


def test_grid_too_coarse(fringe_11cm):
    coarse = FringePattern(fringe_11cm.detunings_hz[::20], fringe_11cm.probabilities[::20],
                           fringe_11cm.metadata)
    with pytest.raises(GridTooCoarse):
        fringe_metrics(coarse)


def test_grid_missing_adjacent_fringes():
    grid = np.linspace(-1, 1, 201)
    with pytest.raises(ValueError):
        fringe_metrics(FringePattern(grid, np.cos(np.pi * grid * 0.3) ** 2, {"big_t_s": 0.3}))


def test_metrics_need_the_period():
    with pytest.raises(ValueError):
        fringe_metrics(FringePattern(np.linspace(-5, 5, 101), np.zeros(101)))


def test_invalid_grid():
    with pytest.raises(ValueError):
        FringePattern(np.array([0.0, 2.0, 1.0]), np.zeros(3))


def test_no_surviving_atoms():
    launch = LaunchConfig.from_apogee(0.110, n_atoms=20, probe_radius=1e-5)
    with pytest.raises(NoSurvivingAtoms):
        pattern(RamseyConfig(), launch, np.linspace(-10, 10, 401))


def test_launch_below_the_cavity():
    with pytest.raises(FountainTooLow):
        pattern(RamseyConfig(), LaunchConfig(launch_speed=0.5), np.linspace(-10, 10, 401))
