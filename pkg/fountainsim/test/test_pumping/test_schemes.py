import numpy as np
import pytest

from fountainsim.pumping import (GroundPopulations, PumpLaser, evolve, leak_out_select, one_laser_select,
                                 two_laser_select, F5_F4_SPLITTING_LINEWIDTHS)


@pytest.fixture(scope="module")
def baseline():
    return one_laser_select(GroundPopulations.uniform())


def test_one_laser_baseline(baseline):
    # every atom ends in F=3, spread evenly over its seven sublevels
    assert baseline.populations.level_total(3) == pytest.approx(1.0, abs=1e-9)
    assert baseline.clock_fraction == pytest.approx(1 / 7, abs=1e-3)
    assert baseline.mean_photons == pytest.approx(9 / 16 * 2.4, rel=1e-3)
    assert baseline.enhancement is None


def test_one_laser_trajectory():
    result = one_laser_select(GroundPopulations.uniform(), record_trajectory=True)
    assert result.trajectory["time"].iloc[0] == 0.0
    assert result.trajectory["time"].iloc[-1] == pytest.approx(result.duration)


def test_two_laser_zero_budget_is_the_baseline(baseline):
    result = two_laser_select(GroundPopulations.uniform(), 0.0, 0.0)
    assert result.enhancement == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(result.populations.p, baseline.populations.p)
    assert result.mean_photons == pytest.approx(baseline.mean_photons)


def test_one_photon_moves_three_eighths_of_the_neighbours():
    # |3,+-1> -> |3',+-1> -> |3,0> with 3/4 * 1/2, everything else misses |3,0> on the first photon
    result = two_laser_select(GroundPopulations.uniform(), 0.0, 1.0)
    assert result.enhancement == pytest.approx(1.75, rel=1e-6)


def test_two_photon_enhancement():
    result = two_laser_select(GroundPopulations.uniform(), 0.0, 2.0)
    assert result.enhancement == pytest.approx(2.5, abs=0.5)


def test_two_laser_enhancement_grows_with_budget():
    enhancements = [two_laser_select(GroundPopulations.uniform(), 0.0, budget).enhancement
                    for budget in (1.0, 2.0, 3.0, 6.0, 30.0)]
    assert all(np.diff(enhancements) > 0)
    assert enhancements[-1] > 2.5


def test_fractional_budget_interpolates():
    one, half, two = [two_laser_select(GroundPopulations.uniform(), 0.0, budget) for budget in (1.0, 1.5, 2.0)]
    np.testing.assert_allclose(half.populations.p, (one.populations.p + two.populations.p) / 2, atol=1e-12)
    assert half.mean_photons == pytest.approx((one.mean_photons + two.mean_photons) / 2, rel=1e-12)


def test_two_laser_budget_caps_the_photons(baseline):
    result = two_laser_select(GroundPopulations.uniform(), 0.0, 2.0)
    stage = result.mean_photons - baseline.mean_photons
    # the baseline |3,0> share never scatters
    assert stage == pytest.approx(6 / 7 + (1 - 1.75 / 7), rel=1e-6)
    assert result.mean_recoil_speed_addition > baseline.mean_recoil_speed_addition


def test_aligned_polarization_is_best():
    angles = np.linspace(0, np.pi / 2, 7)
    fractions = [two_laser_select(GroundPopulations.uniform(), angle, 2.0).clock_fraction for angle in angles]
    assert int(np.argmax(fractions)) == 0
    assert fractions[-1] < fractions[0]


def test_two_laser_run_only_gains_clock_atoms():
    result = two_laser_select(GroundPopulations.uniform(), 0.0, 6.0, record_trajectory=True)
    assert np.all(np.diff(result.trajectory["p_3_0"]) >= -1e-15)
    assert np.all(np.diff(result.trajectory["time"]) > 0)


def test_long_rate_equation_run_fills_the_clock_state(baseline):
    lasers = [PumpLaser(3, 1.0, 0.0), PumpLaser.isotropic(4, 1.0)]
    short = evolve(baseline.populations, lasers, 300.0, record_trajectory=True)
    assert np.all(np.diff(short.trajectory["p_3_0"]) >= -1e-15)
    long = evolve(baseline.populations, lasers, 1e5)
    assert long.clock_fraction > 0.99


@pytest.mark.parametrize('saturation', [0.1, 1.0, 10.0])
def test_one_laser_end_state_does_not_depend_on_saturation(baseline, saturation):
    result = one_laser_select(GroundPopulations.uniform(), saturation)
    np.testing.assert_allclose(result.populations.p, baseline.populations.p, atol=1e-9)
    assert result.mean_photons == pytest.approx(baseline.mean_photons, rel=1e-6)


def test_two_laser_trajectory_continues_the_baseline(baseline):
    result = two_laser_select(GroundPopulations.uniform(), 0.0, 3.0, record_trajectory=True)
    first = result.trajectory.iloc[0]
    assert first["time"] == pytest.approx(baseline.duration)
    assert first["photons"] == pytest.approx(baseline.mean_photons)
    assert result.trajectory["photons"].iloc[-1] == pytest.approx(result.mean_photons)
    assert result.trajectory["time"].iloc[-1] == pytest.approx(result.duration)


def test_two_laser_rejects_negative_budget():
    with pytest.raises(ValueError):
        two_laser_select(GroundPopulations.uniform(), 0.0, -1.0)


def test_leak_out_heats_more_than_one_laser():
    start = GroundPopulations.uniform_over(4)
    leak = leak_out_select(start)
    one_laser = one_laser_select(start)
    assert leak.populations.level_total(3) == pytest.approx(1.0, abs=1e-6)
    # cycling photons per leak event, F'=5 and F'=4 shares of the F=4 strength are 11/18 and 7/24
    s4 = 1.0 / (1.0 + 4.0 * F5_F4_SPLITTING_LINEWIDTHS ** 2)
    expected = 2.4 * (1.0 + (11 / 18) / (s4 * 7 / 24))
    assert leak.mean_photons == pytest.approx(expected, rel=1e-2)
    assert leak.mean_photons > 100 * one_laser.mean_photons
