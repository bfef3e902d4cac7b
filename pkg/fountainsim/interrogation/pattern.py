import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from scipy.signal import find_peaks

from fountainsim.ballistics import CESIUM, sample_cloud_arrays, transit_arrays
from fountainsim.exceptions import GridTooCoarse, NoSurvivingAtoms
from fountainsim.interrogation.ramsey import RamseyConfig, ramsey_probability

logger = logging.getLogger(__name__)

# atoms evaluated per joblib task
CHUNK_SIZE = 256
MIN_POINTS_PER_FRINGE = 8


@dataclass
class FringePattern:
    """
    Transition probability against microwave detuning.

    Attributes
    ----------
    detunings_hz : np.ndarray
        strictly increasing grid
    probabilities : np.ndarray
        values in [0, 1]
    metadata : dict
        configuration snapshot, seed and atom numbers
    """
    detunings_hz: np.ndarray
    probabilities: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.detunings_hz = np.asarray(self.detunings_hz, dtype=float)
        self.probabilities = np.asarray(self.probabilities, dtype=float)
        if self.detunings_hz.shape != self.probabilities.shape:
            raise ValueError("Detunings and probabilities must have the same shape")
        _check_grid(self.detunings_hz)

    @property
    def big_t_s(self):
        return self.metadata.get("big_t_s")

    def to_frame(self):
        return pd.DataFrame({"detuning_hz": self.detunings_hz, "probability": self.probabilities})


@dataclass
class FringeMetrics:
    """
    Figures of merit of a fringe pattern.

    Attributes
    ----------
    central_amplitude : float
        central maximum minus the mean of its two flanking minima
    fwhm_hz : float
        full width at half height of the central fringe, NaN when a crossing is off grid
    side_amplitudes : dict
        amplitude of fringe k for the covered k = +-1, +-2, +-3
    central_to_adjacent_ratio : float
        central amplitude over the mean amplitude of fringes -1 and +1
    peak_probability : float
    peak_detuning_hz : float
    """
    central_amplitude: float
    fwhm_hz: float
    side_amplitudes: dict
    central_to_adjacent_ratio: float
    peak_probability: float
    peak_detuning_hz: float

    def to_dict(self):
        return {"central_amplitude": self.central_amplitude, "fwhm_hz": self.fwhm_hz,
                "side_amplitudes": {str(k): v for k, v in self.side_amplitudes.items()},
                "central_to_adjacent_ratio": self.central_to_adjacent_ratio,
                "peak_probability": self.peak_probability, "peak_detuning_hz": self.peak_detuning_hz}


def _check_grid(grid):
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("The detuning grid must be a non-empty 1-d array")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("The detuning grid must be strictly increasing")


def _chunk_sum(delta, b, tau, free_time, leak_ratio, leak_phase):
    probabilities = ramsey_probability(delta[np.newaxis, :], b, tau[:, np.newaxis], free_time[:, np.newaxis],
                                       leak_ratio, leak_phase)
    return probabilities.sum(axis=0)


def pattern(cfg: RamseyConfig, launch, grid, n_atoms=None, seed=0, threads=1, constants=CESIUM):
    """
    Velocity-averaged Ramsey pattern of a launched cloud.

    Launch speeds are Gaussian with rms ``cfg.velocity_sigma``. Every atom passing
    both apertures and the probe contributes with its own pulse duration and flight
    time; the Rabi frequency is fixed so that an atom at the mean speed sees the
    configured pulse area.

    Parameters
    ----------
    cfg : RamseyConfig
        interrogation; tau and T are overwritten by the mean-speed values
    launch : LaunchConfig
        geometry, launch speed and temperature
    grid : array-like
        detunings (Hz), strictly increasing
    n_atoms : int, optional (default=None)
        atoms sampled; launch.n_atoms when None
    seed : int or np.random.SeedSequence, optional (default=0)
    threads : int, optional (default=1)
        joblib workers; the result does not depend on it

    Returns
    -------
    FringePattern

    Raises
    ------
    FountainTooLow
        If the mean launch does not reach the cavity
    NoSurvivingAtoms
        If no sampled atom reaches the detection
    """
    grid = np.asarray(grid, dtype=float)
    _check_grid(grid)
    cfg = cfg.for_launch(launch, constants)
    b = cfg.rabi_rad_s
    cloud = sample_cloud_arrays(launch, seed, vertical_sigma=cfg.velocity_sigma, n_atoms=n_atoms,
                                constants=constants)
    arrays = transit_arrays(cloud, launch, constants)
    survived = arrays["survived"]
    n_survivors = int(survived.sum())
    if n_survivors == 0:
        raise NoSurvivingAtoms(f"None of {len(cloud)} atoms reaches the detection")
    tau = arrays["tau"][survived]
    free_time = arrays["big_t"][survived] - tau
    delta = 2 * np.pi * grid
    logger.info(f"Synthesizing pattern: {n_survivors}/{len(cloud)} atoms, {grid.size} detunings, "
                f"T={cfg.big_t_s:.6g} s, tau={cfg.tau_s:.6g} s, leak_ratio={cfg.leak_ratio}")

    starts = range(0, n_survivors, CHUNK_SIZE)
    sums = Parallel(n_jobs=threads, prefer="threads")(
        delayed(_chunk_sum)(delta, b, tau[i:i + CHUNK_SIZE], free_time[i:i + CHUNK_SIZE],
                            cfg.leak_ratio, cfg.leak_phase_rad)
        for i in starts)
    total = np.zeros_like(delta)
    for chunk in sums:
        total += chunk

    metadata = {"ramsey": cfg.to_dict(), "seed": _seed_repr(seed), "n_atoms": len(cloud),
                "n_survivors": n_survivors, "survival_fraction": n_survivors / len(cloud),
                "rabi_rad_s": b, "big_t_s": cfg.big_t_s, "tau_s": cfg.tau_s}
    return FringePattern(grid, np.clip(total / n_survivors, 0.0, 1.0), metadata)


def _seed_repr(seed):
    if isinstance(seed, np.random.SeedSequence):
        return {"entropy": seed.entropy, "spawn_key": list(seed.spawn_key)}
    return seed


def _fringe(grid, probabilities, peaks, minima, center, period):
    """
    Highest local maximum within half a period of ``center`` and its two flanking minima.

    Returns (peak, left, right) grid indices, or None when the grid misses the
    maximum or either minimum.
    """
    inside = peaks[np.abs(grid[peaks] - center) <= period / 2 + 1e-12 * period]
    if inside.size == 0:
        return None
    peak = int(inside[np.argmax(probabilities[inside])])
    position = np.searchsorted(minima, peak)
    if position == 0 or position == len(minima):
        return None
    return peak, int(minima[position - 1]), int(minima[position])


def _amplitude(probabilities, extrema):
    peak, left, right = extrema
    return float(probabilities[peak] - 0.5 * (probabilities[left] + probabilities[right]))


def _half_height_crossing(grid, probabilities, peak, half, step):
    i = peak
    while 0 <= i + step < len(grid) and probabilities[i + step] >= half:
        i += step
    j = i + step
    if not 0 <= j < len(grid):
        return np.nan
    # linear interpolation between i (above) and j (below)
    fraction = (probabilities[i] - half) / (probabilities[i] - probabilities[j])
    return grid[i] + fraction * (grid[j] - grid[i])


def fringe_metrics(p: FringePattern, big_t=None):
    """
    Central fringe width and fringe amplitudes.

    Fringe k is the highest local maximum within 1/(2T) of k/T. Its amplitude is
    that maximum minus the mean of the two local minima around it, so neighbouring
    fringes share a minimum. The width is taken at half height between the central
    maximum and its flanking minima.

    Parameters
    ----------
    p : FringePattern
    big_t : float, optional (default=None)
        fringe period is 1/big_t; read from the pattern metadata when None

    Returns
    -------
    FringeMetrics

    Raises
    ------
    GridTooCoarse
        If the grid has fewer than 8 points per fringe period
    ValueError
        If the period is unknown or the grid misses the central or both adjacent fringes
    """
    big_t = p.big_t_s if big_t is None else big_t
    if big_t is None or big_t <= 0:
        raise ValueError("The free-evolution time T is needed to locate the fringes")
    period = 1.0 / big_t
    grid, probabilities = p.detunings_hz, p.probabilities
    if grid.size < 2 or np.max(np.diff(grid)) > period / MIN_POINTS_PER_FRINGE:
        raise GridTooCoarse(f"Grid spacing must be at most {period / MIN_POINTS_PER_FRINGE:.6g} Hz "
                            f"({MIN_POINTS_PER_FRINGE} points per fringe period 1/T)")

    peaks = find_peaks(probabilities)[0]
    minima = find_peaks(-probabilities)[0]
    central = _fringe(grid, probabilities, peaks, minima, 0.0, period)
    if central is None:
        raise ValueError("The grid does not resolve the central fringe and its flanking minima")
    peak = central[0]
    peak_probability = float(probabilities[peak])
    central_amplitude = _amplitude(probabilities, central)
    half = peak_probability - 0.5 * central_amplitude
    left = _half_height_crossing(grid, probabilities, peak, half, -1)
    right = _half_height_crossing(grid, probabilities, peak, half, +1)

    side_amplitudes = {}
    for k in (-3, -2, -1, 1, 2, 3):
        extrema = _fringe(grid, probabilities, peaks, minima, k * period, period)
        if extrema is not None and extrema[0] != peak:
            side_amplitudes[k] = _amplitude(probabilities, extrema)
    adjacent = [side_amplitudes[k] for k in (-1, 1) if k in side_amplitudes]
    if not adjacent:
        raise ValueError("The grid must cover the fringes adjacent to the central one")
    mean_adjacent = float(np.mean(adjacent))
    ratio = central_amplitude / mean_adjacent if mean_adjacent > 0 else np.inf
    return FringeMetrics(central_amplitude=central_amplitude, fwhm_hz=float(right - left),
                         side_amplitudes=side_amplitudes, central_to_adjacent_ratio=float(ratio),
                         peak_probability=peak_probability, peak_detuning_hz=float(grid[peak]))
