import numpy as np
import pytest

from fountainsim.clockloop import ALLAN_COLUMNS, allan_deviation, octave_taus
from fountainsim.exceptions import InsufficientData


def test_alternating_series():
    y = np.tile([1e-13, -1e-13], 50)
    series = allan_deviation(y, 2.0, taus=[2.0])
    assert series.adev[0] == pytest.approx(np.sqrt(2) * 1e-13, rel=1e-9)


def test_white_frequency_noise_slope():
    y = np.random.default_rng(0).standard_normal(4096)
    series = allan_deviation(y, 1.0)
    assert series.loglog_slope(tau_max=256) == pytest.approx(-0.5, abs=0.1)
    assert series.adev[0] == pytest.approx(1.0, rel=0.05)


def test_octave_taus():
    np.testing.assert_allclose(octave_taus(100, 2.0), [2, 4, 8, 16, 32, 64])


def test_frame():
    series = allan_deviation(np.random.default_rng(1).standard_normal(64), 1.0)
    frame = series.to_frame()
    assert list(frame.columns) == ALLAN_COLUMNS
    assert np.all(np.diff(frame["tau_s"]) > 0)


def test_record_too_short():
    with pytest.raises(InsufficientData):
        allan_deviation(np.zeros(10), 1.0, taus=[8.0])


def test_slope_needs_two_points():
    series = allan_deviation(np.zeros(20), 1.0)
    with pytest.raises(InsufficientData):
        series.loglog_slope()


def test_invalid_tau0():
    with pytest.raises(ValueError):
        allan_deviation(np.zeros(10), 0.0)


def test_shortest_tau_matches_the_two_sample_variance():
    y = np.random.default_rng(5).standard_normal(501) * 1e-13
    series = allan_deviation(y, 2.0, taus=[2.0])
    assert series.adev[0] == pytest.approx(np.sqrt(0.5 * np.mean(np.diff(y) ** 2)), rel=1e-10)
