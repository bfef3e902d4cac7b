from dataclasses import dataclass

import numpy as np
from scipy import constants


@dataclass(frozen=True)
class PhysicalConstants:
    """
    Caesium and laboratory constants used by the fountain model.

    Attributes
    ----------
    g : float
        gravitational acceleration (m/s^2)
    cs_mass : float
        mass of a caesium-133 atom (kg)
    lambda_d2 : float
        D2 line wavelength (m)
    hyperfine_hz : float
        ground-state hyperfine splitting, exact SI definition (Hz)
    """
    g: float = 9.81
    cs_mass: float = 2.207e-25
    lambda_d2: float = 852.35e-9
    hyperfine_hz: float = 9_192_631_770.0

    def __post_init__(self):
        for name in ("g", "cs_mass", "lambda_d2", "hyperfine_hz"):
            if not getattr(self, name) > 0:
                raise ValueError(f"Physical constant {name} must be strictly positive")

    @property
    def recoil_speed(self):
        """Single-photon recoil h/(m lambda), about 3.52 mm/s."""
        return constants.h / (self.cs_mass * self.lambda_d2)

    def velocity_sigma(self, temperature):
        """One-axis thermal velocity spread sqrt(kB T / m) in m/s."""
        if temperature < 0:
            raise ValueError(f"Temperature must be >= 0, got {temperature}")
        return float(np.sqrt(constants.k * temperature / self.cs_mass))


CESIUM = PhysicalConstants()
