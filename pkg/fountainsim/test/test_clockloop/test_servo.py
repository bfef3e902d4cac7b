import logging

import numpy as np
import pytest

from fountainsim.clockloop import (CLOCK_RUN_COLUMNS, RamseyFringe, ServoConfig, allan_deviation, discriminator_slope,
                                  error_signal, run_servo)
from fountainsim.detection import DetectionConfig
from fountainsim.exceptions import ConfigError, LockLost


@pytest.fixture
def fringe():
    return RamseyFringe(0.2995, 0.0068)


def test_error_signal_sign(fringe):
    mod = fringe.fwhm_hz / 2
    assert error_signal(0.1, mod, fringe) > 0
    assert error_signal(-0.1, mod, fringe) < 0
    assert error_signal(0.0, mod, fringe) == pytest.approx(0.0, abs=1e-12)


def test_noiseless_servo_converges(fringe):
    run = run_servo(ServoConfig(n_cycles=200, initial_offset_hz=0.4), fringe)
    assert abs(run.offset[-1]) < 1e-3
    assert len(run) == 200
    assert list(run.to_frame().columns) == CLOCK_RUN_COLUMNS
    assert np.all(np.isnan(run.error[::2]))
    assert run.side[0] == 1 and run.side[1] == -1


def test_zero_gain_never_corrects(fringe, caplog):
    with caplog.at_level(logging.WARNING, logger="fountainsim"):
        run = run_servo(ServoConfig(gain=0.0, n_cycles=20, initial_offset_hz=0.3), fringe)
    np.testing.assert_array_equal(run.offset, 0.3)
    assert "gain is 0" in caplog.text


def test_excessive_gain_loses_lock(fringe):
    with pytest.raises(LockLost) as error:
        run_servo(ServoConfig(gain=100.0, n_cycles=50, initial_offset_hz=0.4), fringe)
    assert error.value.cycle == 1
    assert abs(error.value.offset_hz) > 3 * fringe.fwhm_hz


def test_capture_range(fringe):
    with pytest.raises(ConfigError):
        run_servo(ServoConfig(initial_offset_hz=1.0), fringe)


def test_cycle_shorter_than_flight(fringe):
    with pytest.raises(ConfigError):
        run_servo(ServoConfig(cycle_time_s=0.2), fringe)


def test_noisy_servo_is_reproducible(fringe):
    cfg = ServoConfig(n_cycles=100, initial_offset_hz=0.2)
    first = run_servo(cfg, fringe, DetectionConfig(), n_detected_atoms=10 ** 5, seed=3)
    second = run_servo(cfg, fringe, DetectionConfig(), n_detected_atoms=10 ** 5, seed=3)
    np.testing.assert_array_equal(first.offset, second.offset)
    assert first.tau0_s == 2.0
    assert len(first.pair_offsets) == 50
    np.testing.assert_allclose(first.fractional_frequency(), first.pair_offsets / 9_192_631_770.0)


def test_seed_sequence_seeds(fringe):
    cfg = ServoConfig(n_cycles=20, initial_offset_hz=0.2)
    sequence = np.random.SeedSequence(3)
    assert error_signal(0.1, fringe.fwhm_hz / 2, fringe, DetectionConfig(), seed=sequence) == error_signal(
        0.1, fringe.fwhm_hz / 2, fringe, DetectionConfig(), seed=3)
    from_sequence = run_servo(cfg, fringe, DetectionConfig(), seed=np.random.SeedSequence(4))
    np.testing.assert_array_equal(from_sequence.offset, run_servo(cfg, fringe, DetectionConfig(), seed=4).offset)


def test_pair_without_counts_is_not_corrected(fringe, caplog):
    dark = DetectionConfig(collection_efficiency=1e-9)
    with caplog.at_level(logging.WARNING, logger="fountainsim"):
        run = run_servo(ServoConfig(n_cycles=6, initial_offset_hz=0.2), fringe, dark, n_detected_atoms=1)
    assert np.all(np.isnan(run.signal))
    np.testing.assert_array_equal(run.offset, 0.2)
    assert "no photon counted" in caplog.text


@pytest.mark.parametrize('loop_ratio', [0.2, 0.5, 0.8, -0.5])
def test_noiseless_convergence_is_geometric(fringe, loop_ratio):
    slope = discriminator_slope(fringe, fringe.fwhm_hz / 2)
    gain = (1 - loop_ratio) / slope
    run = run_servo(ServoConfig(gain=gain, n_cycles=24, initial_offset_hz=0.01), fringe)
    offsets = np.concatenate([[0.01], run.pair_offsets])
    np.testing.assert_allclose(offsets[1:] / offsets[:-1], 1 - gain * slope, rtol=1e-3)


def test_locked_run_averages_as_white_frequency_noise(fringe):
    run = run_servo(ServoConfig(n_cycles=20_000, initial_offset_hz=0.1), fringe, DetectionConfig(),
                    n_detected_atoms=10 ** 5, seed=17)
    allan = allan_deviation(run.fractional_frequency(), run.tau0_s, taus=[16.0, 32.0, 64.0, 128.0, 256.0])
    assert allan.loglog_slope() == pytest.approx(-0.5, abs=0.1)


@pytest.mark.parametrize('kwargs', [dict(gain=-1.0), dict(modulation_hz=0.0), dict(cycle_time_s=0.0),
                                    dict(n_cycles=0)])
def test_invalid_servo_config(kwargs):
    with pytest.raises(ConfigError):
        ServoConfig(**kwargs)
