import numpy as np

from fountainsim.interrogation.ramsey import ramsey_closed_form
from fountainsim.interrogation.pattern import fringe_metrics


class FringeModel:
    """
    Transition probability as a function of the microwave detuning seen by the servo.

    Attributes
    ----------
    fwhm_hz : float
        width of the central fringe
    big_t_s : float
        time between the Ramsey pulses
    """
    fwhm_hz = None
    big_t_s = None

    def probability(self, detuning_hz):
        raise NotImplementedError


class RamseyFringe(FringeModel):
    """
    Single-velocity Ramsey fringe with optional contrast and background.

    Parameters
    ----------
    big_t_s : float
        time between pulse midpoints (s)
    tau_s : float
        pulse duration (s)
    pulse_area_rad : float, optional (default=pi/2)
    contrast : float, optional (default=1.0)
        scale of the fringe, e.g. the |3,0> fraction after state selection
    background : float, optional (default=0.0)
        probability added everywhere
    """

    def __init__(self, big_t_s, tau_s, pulse_area_rad=np.pi / 2, contrast=1.0, background=0.0):
        if not 0 < tau_s < big_t_s:
            raise ValueError(f"Need 0 < tau < T, got tau={tau_s}, T={big_t_s}")
        if background < 0 or contrast < 0 or background + contrast > 1:
            raise ValueError("background + contrast must lie in [0, 1]")
        self.big_t_s = big_t_s
        self.tau_s = tau_s
        self.pulse_area_rad = pulse_area_rad
        self.contrast = contrast
        self.background = background
        self.fwhm_hz = 1.0 / (2.0 * big_t_s)

    def probability(self, detuning_hz):
        b = self.pulse_area_rad / self.tau_s
        value = ramsey_closed_form(2 * np.pi * np.asarray(detuning_hz, dtype=float), b, self.tau_s,
                                   self.big_t_s - self.tau_s)
        value = self.background + self.contrast * value
        return float(value) if np.ndim(value) == 0 else value


class PatternFringe(FringeModel):
    """
    Fringe read off a synthesized pattern by linear interpolation.

    Parameters
    ----------
    fringe_pattern : FringePattern
        pattern covering at least the fringes adjacent to the central one
    """

    def __init__(self, fringe_pattern):
        self.fringe_pattern = fringe_pattern
        self.big_t_s = fringe_pattern.big_t_s
        self.fwhm_hz = fringe_metrics(fringe_pattern).fwhm_hz

    def probability(self, detuning_hz):
        value = np.interp(detuning_hz, self.fringe_pattern.detunings_hz, self.fringe_pattern.probabilities)
        return float(value) if np.ndim(value) == 0 else value


def discriminator_slope(model: FringeModel, modulation_hz):
    """
    Slope K of the noiseless error P(x - mod) - P(x + mod) at x = 0.

    The error has the sign of the offset for modulation inside the central fringe,
    so K > 0 there.
    """
    step = model.fwhm_hz * 1e-4

    def error(x):
        return model.probability(x - modulation_hz) - model.probability(x + modulation_hz)

    return (error(step) - error(-step)) / (2 * step)


def stable_gain_range(model: FringeModel, modulation_hz):
    """
    Gains for which the linearized loop converges, 0 < gain * K < 2.

    Returns
    -------
    tuple of float
        (0, 2 / K)
    """
    slope = discriminator_slope(model, modulation_hz)
    if slope <= 0:
        raise ValueError(f"Modulation {modulation_hz} Hz gives no locking slope")
    return 0.0, 2.0 / slope
