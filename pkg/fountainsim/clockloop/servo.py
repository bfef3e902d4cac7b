"""
Integrating frequency servo on the simulated fountain.

Launches alternate between the two sides of the central fringe, +mod first. After
each pair the error e = S(-mod) - S(+mod), which has the sign of the frequency
offset, corrects the offset by -gain * e. Without noise the offset shrinks by
1 - gain * K per pair, K being the discriminator slope.
"""
import logging
from dataclasses import dataclass, asdict

import numpy as np
import pandas as pd

from fountainsim.ballistics.constants import CESIUM
from fountainsim.clockloop.fringe_models import FringeModel, discriminator_slope
from fountainsim.detection import DetectionConfig, measure_cycle
from fountainsim.aux.utils import as_seed_sequence
from fountainsim.exceptions import ConfigError, LockLost

logger = logging.getLogger(__name__)

CLOCK_RUN_COLUMNS = ["cycle", "side", "signal", "error", "correction", "offset"]
# lock is declared lost beyond this many fringe widths
LOCK_LIMIT_FWHM = 3.0


@dataclass(frozen=True)
class ServoConfig:
    """
    Servo loop settings.

    Attributes
    ----------
    gain : float, optional (default=None)
        correction in Hz per unit of error signal; half the deadbeat gain 1/K when None
    modulation_hz : float, optional (default=None)
        square-wave modulation depth; FWHM/2 of the fringe when None
    cycle_time_s : float, optional (default=1.0)
        launch-to-launch period, longer than T
    n_cycles : int, optional (default=1000)
        launches
    initial_offset_hz : float, optional (default=0.0)
        frequency offset of the local oscillator at start
    """
    gain: float = None
    modulation_hz: float = None
    cycle_time_s: float = 1.0
    n_cycles: int = 1000
    initial_offset_hz: float = 0.0

    def __post_init__(self):
        if self.gain is not None and self.gain < 0:
            raise ConfigError(f"gain must be >= 0, got {self.gain}")
        if self.modulation_hz is not None and self.modulation_hz <= 0:
            raise ConfigError(f"modulation_hz must be > 0, got {self.modulation_hz}")
        if self.cycle_time_s <= 0:
            raise ConfigError(f"cycle_time_s must be > 0, got {self.cycle_time_s}")
        if self.n_cycles < 1:
            raise ConfigError(f"n_cycles must be >= 1, got {self.n_cycles}")

    def to_dict(self):
        return asdict(self)


class ClockRun:
    """
    Record of a servo run, one row per launch.

    Attributes
    ----------
    cycle, side, signal, error, correction, offset : np.ndarray
        error is NaN on the first launch of a pair, where no correction is made,
        and on a second launch when either cycle of the pair counted no photon
    cycle_time_s : float
    gain : float
    modulation_hz : float
    """

    def __init__(self, rows, cycle_time_s, gain, modulation_hz):
        frame = pd.DataFrame(rows, columns=CLOCK_RUN_COLUMNS)
        self.cycle = frame["cycle"].to_numpy()
        self.side = frame["side"].to_numpy()
        self.signal = frame["signal"].to_numpy()
        self.error = frame["error"].to_numpy()
        self.correction = frame["correction"].to_numpy()
        self.offset = frame["offset"].to_numpy()
        self.cycle_time_s = cycle_time_s
        self.gain = gain
        self.modulation_hz = modulation_hz

    def __len__(self):
        return len(self.cycle)

    def to_frame(self):
        return pd.DataFrame({name: getattr(self, name) for name in CLOCK_RUN_COLUMNS})

    @property
    def pair_offsets(self):
        """Offset after every correction."""
        return self.offset[self.side == -1]

    @property
    def tau0_s(self):
        """Spacing of the corrections."""
        return 2.0 * self.cycle_time_s

    def fractional_frequency(self, constants=CESIUM):
        return self.pair_offsets / constants.hyperfine_hz


def _measure(model, detuning_hz, detection, n_detected_atoms, seed):
    p = float(np.clip(model.probability(detuning_hz), 0.0, 1.0))
    return measure_cycle(p, n_detected_atoms, detection, seed).signal


def error_signal(offset_hz, mod_hz, model: FringeModel, detection: DetectionConfig = None, n_detected_atoms=10 ** 6,
                 seed=0):
    """
    Two-point error signal S(offset - mod) - S(offset + mod).

    Parameters
    ----------
    offset_hz : float
        frequency offset from the fringe centre
    mod_hz : float
        modulation depth
    model : FringeModel
    detection : DetectionConfig, optional (default=None)
        noiseless detection when None
    n_detected_atoms : int, optional (default=10**6)
    seed : int or np.random.SeedSequence, optional (default=0)

    Returns
    -------
    float
        error with the sign of the offset on the central fringe
    """
    detection = DetectionConfig.noiseless() if detection is None else detection
    low_seed, high_seed = as_seed_sequence(seed).spawn(2)
    low = _measure(model, offset_hz - mod_hz, detection, n_detected_atoms, low_seed)
    high = _measure(model, offset_hz + mod_hz, detection, n_detected_atoms, high_seed)
    return low - high


def run_servo(cfg: ServoConfig, model: FringeModel, detection: DetectionConfig = None, n_detected_atoms=10 ** 6,
              seed=0):
    """
    Closes the loop for ``cfg.n_cycles`` launches.

    Parameters
    ----------
    cfg : ServoConfig
    model : FringeModel
        fringe seen by the atoms
    detection : DetectionConfig, optional (default=None)
        noiseless detection when None
    n_detected_atoms : int, optional (default=10**6)
    seed : int or np.random.SeedSequence, optional (default=0)

    Returns
    -------
    ClockRun

    Raises
    ------
    ConfigError
        If the initial offset is outside the capture range FWHM/2 or the cycle is shorter than T
    LockLost
        If the offset leaves +-3 FWHM
    """
    detection = DetectionConfig.noiseless() if detection is None else detection
    if abs(cfg.initial_offset_hz) >= model.fwhm_hz / 2:
        raise ConfigError(f"Initial offset {cfg.initial_offset_hz} Hz is outside the capture range "
                          f"+-{model.fwhm_hz / 2:.6g} Hz")
    if model.big_t_s is not None and cfg.cycle_time_s <= model.big_t_s:
        raise ConfigError(f"cycle_time_s={cfg.cycle_time_s} must exceed T={model.big_t_s:.6g} s")
    modulation = model.fwhm_hz / 2 if cfg.modulation_hz is None else cfg.modulation_hz
    gain = cfg.gain
    if gain is None:
        gain = 0.5 / discriminator_slope(model, modulation)
    if gain == 0:
        logger.warning("Servo gain is 0, the offset will never be corrected")
    limit = LOCK_LIMIT_FWHM * model.fwhm_hz
    logger.info(f"Servo: {cfg.n_cycles} cycles, gain={gain:.6g} Hz, modulation={modulation:.6g} Hz")

    seeds = as_seed_sequence(seed).spawn(cfg.n_cycles)
    offset = cfg.initial_offset_hz
    rows = []
    high = None
    for cycle in range(cfg.n_cycles):
        side = 1 if cycle % 2 == 0 else -1
        signal = _measure(model, offset + side * modulation, detection, n_detected_atoms, seeds[cycle])
        if side == 1:
            high = signal
            rows.append([cycle, side, signal, np.nan, 0.0, offset])
            continue
        error = signal - high
        # no correction on a pair with a dark cycle
        correction = 0.0 if np.isnan(error) else -gain * error
        if np.isnan(error):
            logger.warning(f"Cycle {cycle}: no photon counted, correction skipped")
        offset += correction
        rows.append([cycle, side, signal, error, correction, offset])
        if not abs(offset) <= limit:
            raise LockLost(cycle, offset, limit)
    return ClockRun(rows, cfg.cycle_time_s, gain, modulation)
