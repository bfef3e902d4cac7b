import logging
from dataclasses import dataclass, replace

import numpy as np
import pandas as pd

from fountainsim.ballistics.constants import CESIUM
from fountainsim.ballistics.launch import LaunchConfig, TransitRecord, transit

logger = logging.getLogger(__name__)

TRANSIT_COLUMNS = ["id", "t1", "tau", "T", "v_cavity", "survived_cavity_up", "survived_cavity_down",
                   "survived_detection"]


@dataclass(frozen=True)
class AtomSample:
    """
    Initial state of one atom of the launched cloud.

    Attributes
    ----------
    position : np.ndarray
        (x, y, z) relative to the trap centre (m), z vertical
    velocity : np.ndarray
        (vx, vy, vz) after launch (m/s)
    id : int
        index of the atom in its cloud
    """
    position: np.ndarray
    velocity: np.ndarray
    id: int


class CloudArrays:
    """
    Column view of a sampled cloud used by the vectorized code paths.

    Attributes
    ----------
    positions : np.ndarray
        shape (n, 3)
    velocities : np.ndarray
        shape (n, 3)
    """

    def __init__(self, positions, velocities):
        self.positions = np.asarray(positions, dtype=float)
        self.velocities = np.asarray(velocities, dtype=float)

    def __len__(self):
        return len(self.positions)

    @classmethod
    def from_samples(cls, atoms):
        return cls([a.position for a in atoms], [a.velocity for a in atoms])

    def to_samples(self):
        return [AtomSample(position=p.copy(), velocity=v.copy(), id=i)
                for i, (p, v) in enumerate(zip(self.positions, self.velocities))]


def sample_cloud_arrays(cfg: LaunchConfig, seed, vertical_sigma=None, n_atoms=None, constants=CESIUM):
    """
    Draws a Gaussian cloud with Maxwell-Boltzmann velocities.

    Parameters
    ----------
    cfg : LaunchConfig
        launch speed, temperature, cloud size and atom number
    seed : int or np.random.SeedSequence
        source of randomness
    vertical_sigma : float, optional (default=None)
        spread of the vertical speed (m/s); thermal spread when None
    n_atoms : int, optional (default=None)
        overrides cfg.n_atoms

    Returns
    -------
    CloudArrays
    """
    n_atoms = cfg.n_atoms if n_atoms is None else n_atoms
    if n_atoms < 1:
        raise ValueError(f"n_atoms must be >= 1, got {n_atoms}")
    rng = np.random.default_rng(seed)
    sigma_v = constants.velocity_sigma(cfg.temperature)
    if vertical_sigma is None:
        vertical_sigma = sigma_v
    positions = rng.normal(0.0, 1.0, size=(n_atoms, 3)) * cfg.cloud_sigma_pos
    velocities = rng.normal(0.0, 1.0, size=(n_atoms, 3)) * np.array([sigma_v, sigma_v, vertical_sigma])
    velocities[:, 2] += cfg.launch_speed
    return CloudArrays(positions, velocities)


def sample_cloud(cfg: LaunchConfig, seed, vertical_sigma=None, constants=CESIUM):
    """
    Samples ``cfg.n_atoms`` atoms, deterministic for a given seed.

    Parameters
    ----------
    cfg : LaunchConfig
    seed : int
    vertical_sigma : float, optional (default=None)
        spread of the vertical speed; thermal when None

    Returns
    -------
    list of AtomSample
    """
    return sample_cloud_arrays(cfg, seed, vertical_sigma, constants=constants).to_samples()


def transit_arrays(cloud: CloudArrays, cfg: LaunchConfig, constants=CESIUM):
    """
    Vectorized cavity timing and survival of every atom of a cloud.

    Atoms that do not rise above the cavity get NaN times and false flags.

    Returns
    -------
    dict
        arrays t1, tau, big_t, v_cavity, survived_cavity_up, survived_cavity_down,
        survived_detection and survived
    """
    g = constants.g
    z0 = cloud.positions[:, 2]
    vz = cloud.velocities[:, 2]
    discriminant = vz ** 2 - 2 * g * (cfg.cavity_height - z0)
    reaches = (discriminant > 0) & (vz > 0)
    v_cavity = np.sqrt(np.where(reaches, discriminant, np.nan))
    t1 = (vz - v_cavity) / g
    big_t = 2.0 * v_cavity / g
    tau = cfg.interaction_length / v_cavity
    t_detection = (vz + np.sqrt(np.maximum(vz ** 2 + 2 * g * (z0 - cfg.detection_height), 0.0))) / g

    def radius_at(t):
        xy = cloud.positions[:, :2] + cloud.velocities[:, :2] * t[:, np.newaxis]
        return np.hypot(xy[:, 0], xy[:, 1])

    with np.errstate(invalid="ignore"):
        up = reaches & (radius_at(t1) <= cfg.aperture_radius)
        down = reaches & (radius_at(t1 + big_t) <= cfg.aperture_radius)
        detected = reaches & (radius_at(t_detection) <= cfg.probe_radius)
    return {"t1": t1, "tau": tau, "big_t": big_t, "v_cavity": v_cavity,
            "survived_cavity_up": up, "survived_cavity_down": down, "survived_detection": detected,
            "survived": up & down & detected}


def survival(atom: AtomSample, cfg: LaunchConfig, constants=CESIUM):
    """
    Cavity timing and aperture checks of one atom.

    Parameters
    ----------
    atom : AtomSample
    cfg : LaunchConfig

    Returns
    -------
    TransitRecord

    Raises
    ------
    FountainTooLow
        If the atom does not rise above the cavity
    """
    rise = cfg.cavity_height - atom.position[2]
    shifted = replace(cfg, cavity_height=rise, detection_height=cfg.detection_height - atom.position[2])
    record = transit(float(atom.velocity[2]), shifted, constants)
    flags = transit_arrays(CloudArrays([atom.position], [atom.velocity]), cfg, constants)
    return TransitRecord(t1=record.t1, tau=record.tau, big_t=record.big_t, v_cavity=record.v_cavity,
                         survived_cavity_up=bool(flags["survived_cavity_up"][0]),
                         survived_cavity_down=bool(flags["survived_cavity_down"][0]),
                         survived_detection=bool(flags["survived_detection"][0]))


def survival_fraction(cloud, cfg: LaunchConfig, constants=CESIUM):
    """Fraction of atoms passing both apertures and the probe."""
    if not isinstance(cloud, CloudArrays):
        cloud = CloudArrays.from_samples(cloud)
    return float(np.mean(transit_arrays(cloud, cfg, constants)["survived"]))


def transit_table(cloud, cfg: LaunchConfig, constants=CESIUM):
    """
    Per-atom transit records.

    Returns
    -------
    pd.DataFrame
        columns id, t1, tau, T, v_cavity and the three survival flags
    """
    if not isinstance(cloud, CloudArrays):
        cloud = CloudArrays.from_samples(cloud)
    arrays = transit_arrays(cloud, cfg, constants)
    table = pd.DataFrame({"id": np.arange(len(cloud)), "t1": arrays["t1"], "tau": arrays["tau"],
                          "T": arrays["big_t"], "v_cavity": arrays["v_cavity"],
                          "survived_cavity_up": arrays["survived_cavity_up"],
                          "survived_cavity_down": arrays["survived_cavity_down"],
                          "survived_detection": arrays["survived_detection"]})
    survived = arrays["survived"].sum()
    if survived == 0:
        logger.warning("No atom of the cloud survives the apertures")
    return table[TRANSIT_COLUMNS]
