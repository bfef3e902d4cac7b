import numpy as np
import pytest

from fountainsim.ballistics import CESIUM, LaunchConfig, PhysicalConstants, launch_speed_from_aom_offset, transit
from fountainsim.exceptions import ConfigError, FountainTooLow


def test_recoil_speed():
    assert CESIUM.recoil_speed == pytest.approx(3.52e-3, rel=2e-3)


def test_velocity_sigma():
    assert CESIUM.velocity_sigma(3e-6) == pytest.approx(0.0137, rel=1e-2)
    assert CESIUM.velocity_sigma(0.0) == 0.0
    with pytest.raises(ValueError):
        CESIUM.velocity_sigma(-1.0)


def test_invalid_constants():
    with pytest.raises(ValueError):
        PhysicalConstants(g=0.0)


def test_launch_speed_from_aom_offset():
    assert launch_speed_from_aom_offset(1e6) == pytest.approx(2 * 852.35e-9 * 1e6)
    with pytest.raises(ValueError):
        launch_speed_from_aom_offset(-1.0)


@pytest.mark.parametrize('apogee, big_t', [(0.110, 0.29952), (0.057, 0.21561), (0.30657, 0.50000)])
def test_transit_times(apogee, big_t):
    launch = LaunchConfig.from_apogee(apogee)
    record = transit(launch.launch_speed, launch)
    assert record.big_t == pytest.approx(big_t, abs=1e-4)
    assert record.v_cavity == pytest.approx(CESIUM.g * record.big_t / 2)
    assert record.tau == pytest.approx(launch.interaction_length / record.v_cavity)
    assert record.t1 == pytest.approx((launch.launch_speed - record.v_cavity) / CESIUM.g)
    assert record.survived


def test_fringe_width_of_an_11cm_launch():
    launch = LaunchConfig.from_apogee(0.110)
    assert transit(launch.launch_speed, launch).predicted_fwhm_hz == pytest.approx(1.7, abs=0.1)


def test_apogee_round_trip():
    assert LaunchConfig.from_apogee(0.2).apogee_above_cavity() == pytest.approx(0.2)


def test_fountain_too_low():
    launch = LaunchConfig(launch_speed=0.5)
    with pytest.raises(FountainTooLow):
        transit(launch.launch_speed, launch)
    with pytest.raises(FountainTooLow):
        transit(0.8 * np.sqrt(2 * CESIUM.g * launch.cavity_height), launch)


@pytest.mark.parametrize('apogee', [0.0, -0.05])
def test_apogee_below_cavity(apogee):
    with pytest.raises(FountainTooLow):
        LaunchConfig.from_apogee(apogee)


@pytest.mark.parametrize('kwargs', [dict(launch_speed=0.0), dict(launch_speed=2.0, aperture_radius=0.0),
                                    dict(launch_speed=2.0, n_atoms=0), dict(launch_speed=2.0, temperature=-1.0),
                                    dict(launch_speed=2.0, detection_height=0.05)])
def test_invalid_launch(kwargs):
    with pytest.raises(ConfigError):
        LaunchConfig(**kwargs)
