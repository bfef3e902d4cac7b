"""
State-selection schemes built on the rate equations.

- one-laser: F=4 -> F'=4 only, every atom ends in F=3 spread over its sublevels;
- two-laser: F=3 -> F'=3 with |3,0> dark under pi light, plus F=4 -> F'=4;
- leak-out: F=4 -> F'=5 cycling with off-resonant F=4 -> F'=4 leaking to F=3.
"""
import itertools
import logging

import numpy as np

from fountainsim.angular import ExcitedSublevel, branching_fraction
from fountainsim.ballistics.constants import CESIUM
from fountainsim.exceptions import StepSizeError
from fountainsim.pumping.lasers import PumpLaser, scattering_rates
from fountainsim.pumping.populations import GroundPopulations
from fountainsim.pumping.rate_equations import (DEFAULT_STEP_RATE, MAX_STEP_RATE, PumpResult, evolve, jump_matrix,
                                                 _row, _to_populations, _trajectory)

logger = logging.getLogger(__name__)

# exp(-30) of the pumped level is left after a run to completion
COMPLETION_EFOLDS = 30.0
# F'=5 - F'=4 splitting (251.0 MHz) over the natural linewidth (5.234 MHz)
F5_F4_SPLITTING_LINEWIDTHS = 251.0 / 5.234


def _leak_rate_to_f3(pop, hyperfine_laser):
    """Slowest rate at which an F=4 sublevel is emptied into F=3."""
    rates = scattering_rates(pop, [hyperfine_laser])
    addressed = rates[rates > 0]
    if addressed.size == 0:
        return 0.0
    to_f3 = branching_fraction(ExcitedSublevel.of(hyperfine_laser.excited_f, 0), 3)
    return float(addressed.min()) * to_f3


def _completion_duration(pop, hyperfine_laser):
    rate = _leak_rate_to_f3(pop, hyperfine_laser)
    return COMPLETION_EFOLDS / rate if rate > 0 else 0.0


def one_laser_select(pop, saturation=1.0, duration=None, dt=None, record_trajectory=False, constants=CESIUM):
    """
    Hyperfine pumping into F=3 with the F=4 -> F'=4 laser alone.

    The laser is isotropically polarized so no F=4 sublevel is dark.

    Parameters
    ----------
    pop : GroundPopulations or array-like
        initial populations
    saturation : float, optional (default=1.0)
        saturation parameter of the F=4 -> F'=4 laser
    duration : float, optional (default=None)
        run length in 1/Gamma; long enough to empty F=4 to exp(-30) when None
    dt : float, optional (default=None)
        Euler step, see :func:`~fountainsim.pumping.evolve`

    Returns
    -------
    PumpResult
    """
    pop = _to_populations(pop)
    laser = PumpLaser.isotropic(4, saturation)
    if duration is None:
        duration = _completion_duration(pop, laser)
    result = evolve(pop, [laser], duration, dt=dt, record_trajectory=record_trajectory, constants=constants)
    logger.debug(f"One-laser selection: p(3,0)={result.clock_fraction:.6f}, photons={result.mean_photons:.6f}")
    return result


def _pulse_duration(lasers, cap):
    """Time in which the slowest bright sublevel of ``lasers`` scatters ``cap`` photons, to about exp(-30)."""
    rates = jump_matrix(lasers)[1]
    bright = rates[rates > 0]
    if bright.size == 0 or cap == 0:
        return 0.0
    return (COMPLETION_EFOLDS + 2.0 * cap) / float(bright.min())


def _capped_stage(pop, lasers, cap, duration, dt, record_trajectory):
    """
    Rate equations resolved by the number of photons each atom has scattered.

    Atoms that have scattered ``cap`` photons are frozen. Returns the populations,
    the photons per atom, the elapsed time and the optional trajectory.
    """
    jump, rates = jump_matrix(lasers)
    max_rate = float(rates.max())
    p = np.zeros((cap + 1, len(rates)))
    p[0] = pop.p
    photons = 0.0
    rows = [_row(0.0, np.append(pop.p, 0.0))] if record_trajectory else None
    if duration == 0 or max_rate == 0:
        return pop.p.copy(), photons, 0.0, _trajectory(rows) if record_trajectory else None
    if dt is None:
        dt = DEFAULT_STEP_RATE / max_rate
    if dt * max_rate > MAX_STEP_RATE * (1 + 1e-12):
        raise StepSizeError(f"dt * max rate = {dt * max_rate:.4g} exceeds {MAX_STEP_RATE}")

    n_steps = int(duration // dt)
    remainder = duration - n_steps * dt
    elapsed = 0.0
    for h in itertools.chain(itertools.repeat(dt, n_steps), [remainder] if remainder > 0 else []):
        leaving = p[:cap] * (h * rates)
        photons += float(leaving.sum())
        p[:cap] -= leaving
        p[1:] += leaving @ jump
        elapsed += h
        if record_trajectory:
            rows.append(_row(elapsed, np.append(p.sum(axis=0), photons)))
    return p.sum(axis=0), photons, elapsed, _trajectory(rows) if record_trajectory else None


def two_laser_select(pop, theta, photon_budget, dark_saturation=1.0, hyperfine_saturation=1.0, dt=None,
                     record_trajectory=False, constants=CESIUM):
    """
    Dark-state pumping into |3,0> after a one-laser baseline.

    The baseline is :func:`one_laser_select` run to completion. Both lasers are then
    switched on for a fixed pulse in which every atom scatters at most
    ``photon_budget`` more photons. The pulse is long enough for the aligned
    (theta=0) lasers to spend the whole budget, so at theta=0 an atom stops either
    in |3,0> or with its budget spent. A fractional budget gives the matching share
    of atoms one more photon.

    Parameters
    ----------
    pop : GroundPopulations or array-like
        initial populations
    theta : float
        angle between the F=3 -> F'=3 polarization and the bias field (rad)
    photon_budget : float
        photons per atom allowed in the two-laser stage, >= 0
    dark_saturation : float, optional (default=1.0)
        saturation parameter of the F=3 -> F'=3 laser
    hyperfine_saturation : float, optional (default=1.0)
        saturation parameter of the F=4 -> F'=4 laser
    dt : float, optional (default=None)
        Euler step of both stages

    Returns
    -------
    PumpResult
        totals over both stages, with ``enhancement`` = p(3,0) / baseline p(3,0)

    Raises
    ------
    ValueError
        If photon_budget is negative
    StepSizeError
        If dt * max rate exceeds MAX_STEP_RATE
    """
    if photon_budget < 0:
        raise ValueError(f"Photon budget must be >= 0, got {photon_budget}")
    baseline = one_laser_select(pop, hyperfine_saturation, dt=dt, constants=constants)
    hyperfine = PumpLaser.isotropic(4, hyperfine_saturation)
    lasers = [PumpLaser(3, dark_saturation, theta), hyperfine]
    whole, part = divmod(photon_budget, 1.0)
    caps = [int(whole)] + ([int(whole) + 1] if part > 0 else [])
    duration = _pulse_duration([PumpLaser(3, dark_saturation, 0.0), hyperfine], caps[-1])
    stages = [_capped_stage(baseline.populations, lasers, cap, duration, dt, record_trajectory) for cap in caps]
    p, stage_photons, stage_duration, trajectory = stages[0]
    if part > 0:
        # stages share one time grid
        p = (1.0 - part) * p + part * stages[1][0]
        stage_photons = (1.0 - part) * stage_photons + part * stages[1][1]
        stage_duration = max(stage_duration, stages[1][2])
        if record_trajectory:
            trajectory = (1.0 - part) * trajectory + part * stages[1][3]
    populations = GroundPopulations(p / p.sum())

    if baseline.clock_fraction > 0:
        enhancement = populations[(3, 0)] / baseline.clock_fraction
    else:
        enhancement = np.inf if populations[(3, 0)] > 0 else 1.0
    photons = baseline.mean_photons + stage_photons
    if trajectory is not None:
        trajectory["time"] += baseline.duration
        trajectory["photons"] += baseline.mean_photons
    logger.debug(f"Two-laser selection at theta={theta:.4f}: enhancement={enhancement:.4f}, photons={photons:.4f}")
    return PumpResult(populations=populations, mean_photons=photons,
                      mean_recoil_speed_addition=constants.recoil_speed * np.sqrt(photons / 3.0),
                      duration=baseline.duration + stage_duration, trajectory=trajectory,
                      enhancement=float(enhancement))


def leak_out_select(pop, saturation=1.0, detuning_linewidths=F5_F4_SPLITTING_LINEWIDTHS, duration=None, dt=None,
                    constants=CESIUM):
    """
    Hyperfine pumping by leaking out of the F=4 -> F'=5 cooling cycle.

    With the repumper off, the cycling light also drives F=4 -> F'=4 off resonance,
    and every such excitation has a 5/12 chance of ending in F=3. The atoms scatter
    many cycling photons per leak event, which is the heating penalty of this method.

    Parameters
    ----------
    pop : GroundPopulations or array-like
        initial populations
    saturation : float, optional (default=1.0)
        saturation parameter of the cycling light
    detuning_linewidths : float, optional (default=F5_F4_SPLITTING_LINEWIDTHS)
        detuning of the F'=4 line from the light, in natural linewidths; the
        effective F'=4 saturation is saturation / (1 + 4 detuning^2)
    duration : float, optional (default=None)
        run length in 1/Gamma; long enough to empty F=4 to exp(-30) when None

    Returns
    -------
    PumpResult
    """
    pop = _to_populations(pop)
    leak = PumpLaser.isotropic(4, saturation / (1.0 + 4.0 * detuning_linewidths ** 2))
    cycling = PumpLaser.isotropic(5, saturation)
    if duration is None:
        duration = _completion_duration(pop, leak)
    result = evolve(pop, [cycling, leak], duration, dt=dt, constants=constants)
    logger.info(f"Leak-out selection: {result.mean_photons:.1f} photons in {result.duration:.4g}/Gamma")
    return result
