"""
Fluorescence detection of the F=4 atoms and of the total atom number.

One cycle draws the number of transferred atoms (projection noise), scales both
atom numbers by an arrival-time factor and turns them into photon counts
(shot noise). In single-probe mode the two factors are only partly correlated;
with a second probe beam they are identical and cancel in the ratio.
"""
import logging
from dataclasses import dataclass, asdict

import numpy as np
import pandas as pd

from fountainsim.aux.utils import as_seed_sequence
from fountainsim.exceptions import ConfigError, InsufficientData

logger = logging.getLogger(__name__)

NORMALIZATION_MODES = ("single_probe", "dual_probe")
# above this mean, binomial and Poisson draws use their Gaussian limit
GAUSSIAN_THRESHOLD = 1e6
CYCLE_COLUMNS = ["cycle", "n4", "ntotal", "signal"]


@dataclass(frozen=True)
class DetectionConfig:
    """
    Detection chain.

    Attributes
    ----------
    collection_efficiency : float, optional (default=0.05)
        fraction of fluorescence photons counted, in (0, 1]
    photons_per_atom : float, optional (default=200.0)
        photons scattered by one atom crossing the probe
    arrival_jitter_frac : float, optional (default=0.01)
        relative fluctuation of the arrival time
    normalization_mode : str, optional (default="single_probe")
        "single_probe" or "dual_probe"
    timing_sensitivity : float, optional (default=10.0)
        relative change of the detected atom number per relative arrival-time change
    common_fraction : float, optional (default=0.5)
        share of the jitter variance common to both measurements in single-probe mode
    projection_noise : bool, optional (default=True)
    photon_noise : bool, optional (default=True)
    """
    collection_efficiency: float = 0.05
    photons_per_atom: float = 200.0
    arrival_jitter_frac: float = 0.01
    normalization_mode: str = "single_probe"
    timing_sensitivity: float = 10.0
    common_fraction: float = 0.5
    projection_noise: bool = True
    photon_noise: bool = True

    def __post_init__(self):
        if not 0 < self.collection_efficiency <= 1:
            raise ConfigError(f"collection_efficiency must be in (0, 1], got {self.collection_efficiency}")
        if self.photons_per_atom <= 0:
            raise ConfigError(f"photons_per_atom must be > 0, got {self.photons_per_atom}")
        if self.arrival_jitter_frac < 0 or self.timing_sensitivity < 0:
            raise ConfigError("arrival_jitter_frac and timing_sensitivity must be >= 0")
        if not 0 <= self.common_fraction <= 1:
            raise ConfigError(f"common_fraction must be in [0, 1], got {self.common_fraction}")
        if self.normalization_mode not in NORMALIZATION_MODES:
            raise ConfigError(f"normalization_mode must be one of {NORMALIZATION_MODES}, "
                              f"got {self.normalization_mode!r}")

    @classmethod
    def noiseless(cls, **kwargs):
        """Every noise source switched off."""
        return cls(**{"arrival_jitter_frac": 0.0, "projection_noise": False, "photon_noise": False, **kwargs})

    @property
    def counts_per_atom(self):
        return self.photons_per_atom * self.collection_efficiency

    @property
    def shared_fraction(self):
        return 1.0 if self.normalization_mode == "dual_probe" else self.common_fraction

    @property
    def is_noiseless(self):
        return not self.projection_noise and not self.photon_noise and self.arrival_jitter_frac == 0

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class CycleMeasurement:
    """
    Counts of one fountain cycle.

    Attributes
    ----------
    n4_counts : float
        photons counted from the atoms in F=4
    ntotal_counts : float
        photons counted from all atoms
    signal : float
        n4_counts / ntotal_counts, NaN when no photon was counted
    seed : object
        seed of the cycle
    """
    n4_counts: float
    ntotal_counts: float
    signal: float
    seed: object = None


def _binomial(rng, n, p, size):
    if n > GAUSSIAN_THRESHOLD:
        draw = n * p + np.sqrt(n * p * (1 - p)) * rng.standard_normal(size)
        return np.clip(draw, 0.0, n)
    return np.asarray(rng.binomial(n, p, size), dtype=float)


def _poisson(rng, mean):
    gaussian = mean > GAUSSIAN_THRESHOLD
    exact = np.asarray(rng.poisson(np.where(gaussian, 0.0, mean)), dtype=float)
    approx = np.maximum(mean + np.sqrt(mean) * rng.standard_normal(np.shape(mean)), 0.0)
    return np.where(gaussian, approx, exact)


def simulate_counts(p_transition, n_detected_atoms, cfg: DetectionConfig, rng, size=None):
    """
    Draws n4 and total counts for ``size`` independent cycles.

    Parameters
    ----------
    p_transition : float
        transition probability, 0 <= p <= 1
    n_detected_atoms : int
        atoms reaching the probe, >= 1
    cfg : DetectionConfig
    rng : np.random.Generator
    size : int or tuple, optional (default=None)

    Returns
    -------
    tuple of np.ndarray
        n4 counts and total counts
    """
    if not 0 <= p_transition <= 1:
        raise ValueError(f"Transition probability must be in [0, 1], got {p_transition}")
    if n_detected_atoms < 1:
        raise ValueError(f"Detected atom number must be >= 1, got {n_detected_atoms}")
    shape = () if size is None else size
    if cfg.projection_noise:
        n4 = _binomial(rng, n_detected_atoms, p_transition, shape)
    else:
        n4 = np.full(shape, n_detected_atoms * p_transition)

    spread = cfg.arrival_jitter_frac * cfg.timing_sensitivity
    shared = np.sqrt(cfg.shared_fraction)
    own = np.sqrt(1.0 - cfg.shared_fraction)
    common, own_4, own_total = (rng.standard_normal(shape) for _ in range(3))
    # log-normal, unit mean
    factor_4 = np.exp(spread * (shared * common + own * own_4) - spread ** 2 / 2)
    factor_total = np.exp(spread * (shared * common + own * own_total) - spread ** 2 / 2)

    mean_4 = cfg.counts_per_atom * n4 * factor_4
    mean_total = cfg.counts_per_atom * n_detected_atoms * factor_total
    if cfg.photon_noise:
        return _poisson(rng, mean_4), _poisson(rng, mean_total)
    return np.asarray(mean_4, dtype=float), np.asarray(mean_total, dtype=float)


def _ratio(n4, ntotal):
    # a cycle without counts has no signal
    return np.divide(n4, ntotal, out=np.full(np.shape(n4), np.nan), where=ntotal > 0)


def measure_cycle(p_transition, n_detected_atoms, cfg: DetectionConfig, seed):
    """
    Simulates the detection of one cycle.

    Parameters
    ----------
    p_transition : float
        transition probability, 0 <= p <= 1
    n_detected_atoms : int
        atoms reaching the probe
    cfg : DetectionConfig
    seed : int or np.random.SeedSequence

    Returns
    -------
    CycleMeasurement

    Raises
    ------
    ValueError
        If p is outside [0, 1] or n < 1
    """
    n4, ntotal = simulate_counts(p_transition, n_detected_atoms, cfg, np.random.default_rng(seed))
    return CycleMeasurement(n4_counts=float(n4), ntotal_counts=float(ntotal),
                            signal=float(_ratio(np.asarray(n4), np.asarray(ntotal))), seed=seed)


def measure_cycles(p_transition, n_detected_atoms, cfg: DetectionConfig, n_cycles, seed):
    """Independent cycles at a fixed transition probability, one spawned seed each."""
    seeds = as_seed_sequence(seed).spawn(n_cycles)
    return [measure_cycle(p_transition, n_detected_atoms, cfg, s) for s in seeds]


def cycle_table(measurements):
    """
    Per-cycle measurements.

    Returns
    -------
    pd.DataFrame
        columns cycle, n4, ntotal, signal
    """
    return pd.DataFrame({"cycle": np.arange(len(measurements)),
                         "n4": [m.n4_counts for m in measurements],
                         "ntotal": [m.ntotal_counts for m in measurements],
                         "signal": [m.signal for m in measurements]})[CYCLE_COLUMNS]


@dataclass(frozen=True)
class SnrEstimate:
    """
    Signal-to-noise ratio of averaged measurements.

    Attributes
    ----------
    snr : float
        mean / std of the averaged signal, inf when unbounded
    mean_signal : float
    std_signal : float
    unbounded : bool
        no noise at all, the ratio has no finite value
    n_cycles : int
    n_repeats : int
    """
    snr: float
    mean_signal: float
    std_signal: float
    unbounded: bool
    n_cycles: int
    n_repeats: int

    def to_dict(self):
        return asdict(self)


def snr_estimate(cfg: DetectionConfig, p_peak, n_detected_atoms, n_cycles=10, n_repeats=400, seed=0):
    """
    S/N of the signal averaged over ``n_cycles`` cycles.

    Parameters
    ----------
    cfg : DetectionConfig
    p_peak : float
        transition probability at the fringe peak
    n_detected_atoms : int
        atoms reaching the probe per cycle
    n_cycles : int, optional (default=10)
        cycles per average, >= 1
    n_repeats : int, optional (default=400)
        averages used for the mean and standard deviation, >= 2
    seed : int or np.random.SeedSequence, optional (default=0)

    Returns
    -------
    SnrEstimate

    Raises
    ------
    InsufficientData
        If fewer than two averages contain a cycle with counts
    """
    if n_cycles < 1:
        raise ValueError(f"n_cycles must be >= 1, got {n_cycles}")
    if n_repeats < 2:
        raise ValueError(f"n_repeats must be >= 2, got {n_repeats}")
    rng = np.random.default_rng(seed)
    n4, ntotal = simulate_counts(p_peak, n_detected_atoms, cfg, rng, size=(n_repeats, n_cycles))
    signals = _ratio(n4, ntotal)
    dark = int(np.isnan(signals).sum())
    if dark:
        logger.warning(f"{dark} simulated cycles counted no photon and are left out of the averages")
    counted = (~np.isnan(signals)).sum(axis=1)
    averages = np.nansum(signals, axis=1)[counted > 0] / counted[counted > 0]
    if averages.size < 2:
        raise InsufficientData("Fewer than two averages have any counts, increase n_detected_atoms")
    mean = float(averages.mean())
    std = float(averages.std(ddof=1))
    unbounded = std == 0.0
    if unbounded:
        logger.warning("No noise in the simulated signal, S/N is unbounded")
    snr = np.inf if unbounded else mean / std
    return SnrEstimate(snr=float(snr), mean_signal=mean, std_signal=std, unbounded=unbounded,
                       n_cycles=n_cycles, n_repeats=n_repeats)
