import numpy as np
from dataclasses import dataclass

from fountainsim.ballistics.constants import CESIUM
from fountainsim.exceptions import ConfigError, FountainTooLow


@dataclass(frozen=True)
class LaunchConfig:
    """
    Fountain geometry and launch conditions. Heights are measured from the trap centre.

    Attributes
    ----------
    launch_speed : float
        vertical speed at the trap centre (m/s)
    cavity_height : float, optional (default=0.040)
        height of the microwave cavity (m)
    aperture_radius : float, optional (default=0.006)
        radius of the cavity holes (m)
    interaction_length : float, optional (default=0.010)
        length of the microwave field along the flight path (m)
    cloud_sigma_pos : float, optional (default=0.001)
        rms cloud size per axis (m)
    temperature : float, optional (default=3e-6)
        cloud temperature (K)
    n_atoms : int, optional (default=10000)
        atoms sampled in Monte Carlo runs
    probe_radius : float, optional (default=0.003)
        radius of the detection beam (m)
    detection_height : float, optional (default=0.0)
        height of the detection beam, crossed on the way down (m)
    """
    launch_speed: float
    cavity_height: float = 0.040
    aperture_radius: float = 0.006
    interaction_length: float = 0.010
    cloud_sigma_pos: float = 0.001
    temperature: float = 3e-6
    n_atoms: int = 10000
    probe_radius: float = 0.003
    detection_height: float = 0.0

    def __post_init__(self):
        if not self.launch_speed > 0:
            raise ConfigError(f"launch_speed must be > 0, got {self.launch_speed}")
        for name in ("cavity_height", "aperture_radius", "interaction_length", "probe_radius"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.temperature < 0 or self.cloud_sigma_pos < 0:
            raise ConfigError("temperature and cloud_sigma_pos must be >= 0")
        if self.n_atoms < 1:
            raise ConfigError(f"n_atoms must be >= 1, got {self.n_atoms}")
        if self.detection_height >= self.cavity_height:
            raise ConfigError("The detection beam must lie below the cavity")

    @classmethod
    def from_apogee(cls, apogee_above_cavity, constants=CESIUM, **kwargs):
        """
        Launch reaching ``apogee_above_cavity`` metres above the cavity.

        Parameters
        ----------
        apogee_above_cavity : float
            height of the turning point above the cavity (m)
        constants : PhysicalConstants, optional (default=CESIUM)
        kwargs : dict
            any other LaunchConfig field

        Returns
        -------
        LaunchConfig

        Raises
        ------
        FountainTooLow
            If the apogee is not above the cavity
        """
        if not apogee_above_cavity > 0:
            raise FountainTooLow(f"An apogee {apogee_above_cavity} m above the cavity never reaches it")
        cavity_height = kwargs.get("cavity_height", cls.__dataclass_fields__["cavity_height"].default)
        speed = np.sqrt(2 * constants.g * (cavity_height + apogee_above_cavity))
        return cls(launch_speed=float(speed), **kwargs)

    def apogee_above_cavity(self, constants=CESIUM):
        return self.launch_speed ** 2 / (2 * constants.g) - self.cavity_height


@dataclass(frozen=True)
class TransitRecord:
    """
    Cavity passages of one atom.

    Attributes
    ----------
    t1 : float
        time of the first cavity passage after launch (s)
    tau : float
        duration of each passage (s)
    big_t : float
        time between the two passages (s)
    v_cavity : float
        speed at the cavity, equal on both passes (m/s)
    survived_cavity_up, survived_cavity_down : bool
        inside the aperture on each pass
    survived_detection : bool
        inside the probe beam at detection
    """
    t1: float
    tau: float
    big_t: float
    v_cavity: float
    survived_cavity_up: bool = True
    survived_cavity_down: bool = True
    survived_detection: bool = True

    @property
    def survived(self):
        return self.survived_cavity_up and self.survived_cavity_down and self.survived_detection

    @property
    def predicted_fwhm_hz(self):
        """Ramsey fringe width 1/(2T)."""
        return 1.0 / (2.0 * self.big_t)


def launch_speed_from_aom_offset(delta_hz, constants=CESIUM):
    """
    Moving-molasses launch speed.

    Each vertical beam is double passed through an AOM shifted by +-delta, so the
    upward and downward beams differ by 4 delta and the molasses frame moves at
    v = 2 lambda delta.

    Parameters
    ----------
    delta_hz : float
        per-beam AOM offset (Hz), >= 0
    constants : PhysicalConstants, optional (default=CESIUM)

    Returns
    -------
    float
        launch speed (m/s)
    """
    if delta_hz < 0:
        raise ValueError(f"AOM offset must be >= 0, got {delta_hz}")
    return 2.0 * constants.lambda_d2 * delta_hz


def transit(v0, cfg: LaunchConfig, constants=CESIUM):
    """
    Cavity timing for an atom launched vertically from the trap centre.

    Parameters
    ----------
    v0 : float
        launch speed (m/s), > 0
    cfg : LaunchConfig
        geometry
    constants : PhysicalConstants, optional (default=CESIUM)

    Returns
    -------
    TransitRecord
        survival flags all true

    Raises
    ------
    FountainTooLow
        If the atom does not rise above the cavity
    """
    if v0 <= 0:
        raise ValueError(f"Launch speed must be > 0, got {v0}")
    discriminant = v0 ** 2 - 2 * constants.g * cfg.cavity_height
    if discriminant <= 0:
        raise FountainTooLow(f"Launch speed {v0:.6g} m/s does not reach the cavity at "
                             f"{cfg.cavity_height:.6g} m (needs > {np.sqrt(2 * constants.g * cfg.cavity_height):.6g} m/s)")
    v_cavity = float(np.sqrt(discriminant))
    return TransitRecord(t1=(v0 - v_cavity) / constants.g,
                         tau=cfg.interaction_length / v_cavity,
                         big_t=2.0 * v_cavity / constants.g,
                         v_cavity=v_cavity)
