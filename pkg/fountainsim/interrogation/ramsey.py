from dataclasses import dataclass, asdict

import numpy as np

from fountainsim.ballistics import CESIUM, transit
from fountainsim.exceptions import ConfigError
from fountainsim.interrogation.propagator import drive_elements

AREA_CONVENTIONS = ("per_pulse", "total")


@dataclass(frozen=True)
class RamseyConfig:
    """
    Ramsey interrogation with an optional weak drive between the pulses.

    Attributes
    ----------
    pulse_area_rad : float, optional (default=pi/2)
        pulse area, per pulse or for both pulses together depending on ``area_convention``
    tau_s : float, optional (default=None)
        pulse duration; taken from the launch when None
    big_t_s : float, optional (default=None)
        time between pulse midpoints; taken from the launch when None
    leak_ratio : float, optional (default=0.0)
        leakage Rabi frequency in units of b, >= 0
    leak_phase_rad : float, optional (default=0.0)
        phase of the leakage field relative to the pulses
    velocity_sigma : float, optional (default=0.010)
        rms spread of the vertical launch speed (m/s)
    area_convention : str, optional (default="per_pulse")
        "per_pulse" or "total"
    """
    pulse_area_rad: float = np.pi / 2
    tau_s: float = None
    big_t_s: float = None
    leak_ratio: float = 0.0
    leak_phase_rad: float = 0.0
    velocity_sigma: float = 0.010
    area_convention: str = "per_pulse"

    def __post_init__(self):
        if self.leak_ratio < 0:
            raise ConfigError(f"leak_ratio must be >= 0, got {self.leak_ratio}")
        if self.velocity_sigma < 0:
            raise ConfigError(f"velocity_sigma must be >= 0, got {self.velocity_sigma}")
        if self.area_convention not in AREA_CONVENTIONS:
            raise ConfigError(f"area_convention must be one of {AREA_CONVENTIONS}, got {self.area_convention!r}")
        if self.tau_s is not None and self.big_t_s is not None and not 0 < self.tau_s < self.big_t_s:
            raise ConfigError(f"Need 0 < tau < T, got tau={self.tau_s}, T={self.big_t_s}")

    @property
    def per_pulse_area(self):
        return self.pulse_area_rad if self.area_convention == "per_pulse" else self.pulse_area_rad / 2

    @property
    def rabi_rad_s(self):
        """b such that b * tau is the per-pulse area."""
        if self.tau_s is None:
            raise ValueError("tau_s is not set")
        return self.per_pulse_area / self.tau_s

    def for_launch(self, launch, constants=CESIUM):
        """
        Copy with tau and T of an atom launched at the mean speed.

        Raises
        ------
        FountainTooLow
            If the launch does not reach the cavity
        """
        record = transit(launch.launch_speed, launch, constants)
        return RamseyConfig(**{**asdict(self), "tau_s": record.tau, "big_t_s": record.big_t})

    def to_dict(self):
        return asdict(self)


def ramsey_probability(delta_rad_s, b, tau, big_t, leak_ratio=0.0, leak_phase=0.0):
    """
    Transition probability |3,0> -> |4,0> of a pulse, free flight, pulse sequence.

    Arguments broadcast, so one call evaluates many atoms and detunings.

    Parameters
    ----------
    delta_rad_s : float or np.ndarray
        detuning of the microwave field (rad/s)
    b : float or np.ndarray
        Rabi frequency of the pulses (rad/s)
    tau : float or np.ndarray
        pulse duration (s)
    big_t : float or np.ndarray
        free-flight time between the pulses (s)
    leak_ratio : float, optional (default=0.0)
        leakage Rabi frequency over b during the free flight
    leak_phase : float, optional (default=0.0)
        leakage phase relative to the pulses (rad)

    Returns
    -------
    float or np.ndarray
        probability in [0, 1]
    """
    p_gg, p_ge, p_eg, p_ee = drive_elements(b, delta_rad_s, 0.0, tau)
    f_gg, f_ge, f_eg, f_ee = drive_elements(leak_ratio * np.asarray(b, dtype=float), delta_rad_s, leak_phase, big_t)
    # <e| U_pulse U_free U_pulse |g>
    amplitude = p_eg * (f_gg * p_gg + f_ge * p_eg) + p_ee * (f_eg * p_gg + f_ee * p_eg)
    probability = np.clip(np.abs(amplitude) ** 2, 0.0, 1.0)
    return float(probability) if probability.ndim == 0 else probability


def ramsey_closed_form(delta_rad_s, b, tau, big_t):
    """Textbook Ramsey probability without leakage."""
    delta_rad_s, b = np.broadcast_arrays(np.asarray(delta_rad_s, dtype=float), np.asarray(b, dtype=float))
    omega = np.hypot(b, delta_rad_s)
    half = 0.5 * omega * tau
    # sin(W tau/2)/W -> tau/2 as W -> 0
    sin_over_omega = np.where(omega > 0, np.sin(half) / np.where(omega > 0, omega, 1.0), 0.5 * tau)
    envelope = (2 * b * sin_over_omega) ** 2
    fringe = np.cos(half) * np.cos(0.5 * delta_rad_s * big_t) - delta_rad_s * sin_over_omega * np.sin(
        0.5 * delta_rad_s * big_t)
    return envelope * fringe ** 2
