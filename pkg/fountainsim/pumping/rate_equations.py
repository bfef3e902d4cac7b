"""
Ground-state rate equations with the excited state adiabatically eliminated.

One Euler step of length dt maps the augmented state (16 populations, cumulative
photons) through the matrix

    [[I + dt G, 0], [dt R, 1]]

where G is the population generator and R the per-sublevel scattering rate.
Long runs raise this matrix to a power instead of looping, which is the same
scheme step for step.
"""
import itertools
import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from fountainsim.angular import GROUND_SUBLEVELS, POLARIZATIONS, decay_matrix
from fountainsim.ballistics.constants import CESIUM
from fountainsim.exceptions import StepSizeError
from fountainsim.pumping.populations import GroundPopulations, population_columns

logger = logging.getLogger(__name__)

# dt * max rate bound enforced by evolve
MAX_STEP_RATE = 0.1
# dt * max rate used when no step is given
DEFAULT_STEP_RATE = 0.05


@dataclass
class PumpResult:
    """
    Outcome of an optical-pumping run.

    Attributes
    ----------
    populations : GroundPopulations
        final populations
    mean_photons : float
        photons scattered per atom
    mean_recoil_speed_addition : float
        per-axis rms velocity added by recoil, v_recoil * sqrt(mean_photons / 3), in m/s
    duration : float
        elapsed time in units of 1/Gamma
    trajectory : pd.DataFrame, optional
        time, 16 populations and cumulative photons per step
    enhancement : float, optional
        p(3,0) relative to the one-laser baseline, two-laser runs only
    """
    populations: GroundPopulations
    mean_photons: float
    mean_recoil_speed_addition: float
    duration: float
    trajectory: pd.DataFrame = None
    enhancement: float = None

    @property
    def clock_fraction(self):
        """Population of |3,0>."""
        return self.populations[(3, 0)]


def transfer_matrix(lasers):
    """
    Rates of excitation followed by decay, W[g, g''] for g -> e -> g''.

    Parameters
    ----------
    lasers : list of PumpLaser

    Returns
    -------
    np.ndarray
        (16, 16) matrix; row sums are the scattering rates
    """
    n_levels = len(GROUND_SUBLEVELS)
    transfer = np.zeros((n_levels, n_levels))
    for laser in lasers:
        rates = laser.channel_rates()
        decay = decay_matrix(laser.excited_f)
        for i, q in enumerate(POLARIZATIONS):
            for level in GROUND_SUBLEVELS:
                rate = rates[i, level.index]
                if rate > 0:
                    transfer[level.index] += rate * decay[int(level.m.value) + q + laser.excited_f]
    return transfer


def jump_matrix(lasers):
    """
    Where the next scattered photon leaves an atom.

    Parameters
    ----------
    lasers : list of PumpLaser

    Returns
    -------
    jump : np.ndarray
        (16, 16) row-stochastic matrix, jump[g, g''] for one photon from g; dark rows are the identity
    rates : np.ndarray
        scattering rate of each sublevel
    """
    transfer = transfer_matrix(lasers)
    rates = transfer.sum(axis=1)
    jump = np.eye(len(rates))
    bright = rates > 0
    jump[bright] = transfer[bright] / rates[bright, None]
    return jump, rates


def _step_matrix(transfer, rates, dt):
    n_levels = len(rates)
    step = np.eye(n_levels + 1)
    step[:n_levels, :n_levels] += dt * (transfer.T - np.diag(rates))
    step[n_levels, :n_levels] = dt * rates
    return step


def _to_populations(pop):
    if isinstance(pop, GroundPopulations):
        return pop
    return GroundPopulations(pop)


def _result(state, elapsed, trajectory=None, constants=CESIUM):
    photons = float(state[-1])
    # rounding drift only; every step conserves the total exactly
    populations = np.clip(state[:-1], 0.0, None)
    populations = GroundPopulations(populations / populations.sum())
    return PumpResult(populations=populations, mean_photons=photons,
                      mean_recoil_speed_addition=constants.recoil_speed * np.sqrt(photons / 3.0),
                      duration=elapsed, trajectory=trajectory)


def evolve(pop, lasers, duration, dt=None, photon_budget=None, record_trajectory=False, constants=CESIUM):
    """
    Integrates the rate equations with explicit Euler steps.

    Parameters
    ----------
    pop : GroundPopulations or array-like
        initial populations
    lasers : list of PumpLaser
        lasers switched on for the whole run
    duration : float
        run length in units of 1/Gamma
    dt : float, optional (default=None)
        step; DEFAULT_STEP_RATE / max rate when None
    photon_budget : float, optional (default=None)
        stop as soon as this many photons per atom have been scattered; the last
        step is shortened so the budget is met exactly
    record_trajectory : bool, optional (default=False)
        keep time, populations and photons after every step
    constants : PhysicalConstants, optional (default=CESIUM)
        source of the recoil speed

    Returns
    -------
    PumpResult

    Raises
    ------
    ValueError
        If the populations are not normalized or duration, dt or photon_budget is negative
    StepSizeError
        If dt * max rate exceeds MAX_STEP_RATE
    """
    pop = _to_populations(pop)
    if duration < 0:
        raise ValueError(f"Duration must be >= 0, got {duration}")
    if photon_budget is not None and photon_budget < 0:
        raise ValueError(f"Photon budget must be >= 0, got {photon_budget}")
    transfer = transfer_matrix(lasers)
    rates = transfer.sum(axis=1)
    max_rate = float(rates.max())
    if dt is None:
        dt = DEFAULT_STEP_RATE / max_rate if max_rate > 0 else max(duration, 1.0)
    if dt <= 0:
        raise ValueError(f"Step must be > 0, got {dt}")
    if dt * max_rate > MAX_STEP_RATE * (1 + 1e-12):
        raise StepSizeError(f"dt * max rate = {dt * max_rate:.4g} exceeds {MAX_STEP_RATE}")

    state = np.append(pop.p, 0.0)
    if duration == 0 or max_rate == 0 or photon_budget == 0:
        trajectory = _trajectory([_row(0.0, state)]) if record_trajectory else None
        return _result(state, 0.0, trajectory, constants)

    n_steps = int(duration // dt)
    remainder = duration - n_steps * dt
    logger.debug(f"Evolving {len(lasers)} laser(s) for {duration:.6g}/Gamma in {n_steps} steps of {dt:.6g}")
    if photon_budget is None and not record_trajectory:
        state = np.linalg.matrix_power(_step_matrix(transfer, rates, dt), n_steps) @ state
        if remainder > 0:
            state = _step_matrix(transfer, rates, remainder) @ state
        return _result(state, duration, constants=constants)

    step = _step_matrix(transfer, rates, dt)
    rows = [_row(0.0, state)] if record_trajectory else None
    elapsed = 0.0
    steps = itertools.chain(itertools.repeat(dt, n_steps), [remainder] if remainder > 0 else [])
    for h in steps:
        photon_rate = float(rates @ state[:-1])
        if photon_rate == 0:
            logger.debug("Every populated sublevel is dark, stopping early")
            elapsed = duration
            break
        if photon_budget is not None and state[-1] + h * photon_rate >= photon_budget:
            h = (photon_budget - state[-1]) / photon_rate
            state = _step_matrix(transfer, rates, h) @ state
            state[-1] = photon_budget
            elapsed += h
            if record_trajectory:
                rows.append(_row(elapsed, state))
            break
        state = (step if h == dt else _step_matrix(transfer, rates, h)) @ state
        elapsed += h
        if record_trajectory:
            rows.append(_row(elapsed, state))
    trajectory = _trajectory(rows) if record_trajectory else None
    return _result(state, elapsed, trajectory, constants)


def _row(time, state):
    return [time, *state]


def _trajectory(rows):
    return pd.DataFrame(rows, columns=["time", *population_columns(), "photons"])
