from dataclasses import dataclass

import numpy as np

from fountainsim.angular import EXCITED_F, GROUND_F, GROUND_SUBLEVELS, excitation_matrix

# cos^2 = 1/3: equal pi, sigma+ and sigma- weights
ISOTROPIC_ANGLE = float(np.arccos(1.0 / np.sqrt(3.0)))

# Ground level addressed by each excited level when none is given
_DEFAULT_GROUND_F = {2: 3, 3: 3, 4: 4, 5: 4}


@dataclass(frozen=True)
class PumpLaser:
    """
    Resonant laser on one ground F -> excited F' transition of the D2 line.

    Attributes
    ----------
    excited_f : int
        target excited level F'
    saturation : float
        on-resonance saturation parameter s0 >= 0; detuning is folded into it
    polarization_angle_rad : float, optional (default=0.0)
        angle between the linear polarization and the bias field
    ground_f : int, optional (default=None)
        ground level driven by the laser; F=3 for F'=2,3 and F=4 for F'=4,5 when None
    """
    excited_f: int
    saturation: float
    polarization_angle_rad: float = 0.0
    ground_f: int = None

    def __post_init__(self):
        if self.excited_f not in EXCITED_F:
            raise ValueError(f"Excited level F'={self.excited_f} is not one of {EXCITED_F}")
        if self.saturation < 0:
            raise ValueError(f"Saturation must be >= 0, got {self.saturation}")
        if self.ground_f is None:
            object.__setattr__(self, "ground_f", _DEFAULT_GROUND_F[self.excited_f])
        if self.ground_f not in GROUND_F:
            raise ValueError(f"Ground level F={self.ground_f} is not one of {GROUND_F}")
        if abs(self.ground_f - self.excited_f) > 1:
            raise ValueError(f"F={self.ground_f} -> F'={self.excited_f} is not a dipole transition")

    @classmethod
    def isotropic(cls, excited_f, saturation, ground_f=None):
        return cls(excited_f, saturation, ISOTROPIC_ANGLE, ground_f)

    def polarization_weights(self):
        """
        Spherical decomposition of the linear polarization.

        Returns
        -------
        np.ndarray
            weights of q = -1, 0, +1: sin^2/2, cos^2, sin^2/2
        """
        cos2 = np.cos(self.polarization_angle_rad) ** 2
        sigma = (1.0 - cos2) / 2.0
        return np.array([sigma, cos2, sigma])

    def channel_rates(self):
        """
        Excitation rates per polarization in units of the natural linewidth.

        Returns
        -------
        np.ndarray
            shape (3, 16); zero for sublevels outside ``ground_f``
        """
        addressed = np.array([level.f.value == self.ground_f for level in GROUND_SUBLEVELS])
        weights = self.polarization_weights()[:, np.newaxis]
        return 0.5 * self.saturation * weights * excitation_matrix(self.excited_f) * addressed


def scattering_rates(pop, lasers):
    """
    Photon scattering rate of every ground sublevel.

    Parameters
    ----------
    pop : GroundPopulations
        current populations, validated on construction
    lasers : list of PumpLaser
        lasers acting together

    Returns
    -------
    np.ndarray
        16 rates R_g in units of the natural linewidth

    Raises
    ------
    ValueError
        If a laser has negative saturation
    """
    rates = np.zeros(len(pop.p))
    for laser in lasers:
        if laser.saturation < 0:
            raise ValueError(f"Saturation must be >= 0, got {laser.saturation}")
        rates += laser.channel_rates().sum(axis=0)
    return rates
