"""
Exact evolution of the clock transition |3,0> (g) <-> |4,0> (e) under a constant drive.

In the frame rotating with the microwave field the Hamiltonian is

    H = (b cos(phi) sx + b sin(phi) sy - delta sz) / 2

and the propagator over a time t is cos(W t/2) - i sin(W t/2) n.s with
W = sqrt(b^2 + delta^2).
"""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SpinState:
    """
    Amplitudes of |3,0> and |4,0>.

    Attributes
    ----------
    c_g : complex
    c_e : complex
    """
    c_g: complex = 1.0 + 0.0j
    c_e: complex = 0.0j

    @classmethod
    def ground(cls):
        return cls(1.0 + 0.0j, 0.0j)

    @property
    def norm(self):
        return abs(self.c_g) ** 2 + abs(self.c_e) ** 2

    @property
    def excited_probability(self):
        return abs(self.c_e) ** 2

    def as_array(self):
        return np.array([self.c_g, self.c_e], dtype=complex)


@dataclass(frozen=True)
class DriveSegment:
    """
    Piecewise-constant microwave drive.

    Attributes
    ----------
    rabi_rad_s : float
        Rabi frequency b >= 0
    detuning_rad_s : float
        detuning delta
    phase_rad : float
        drive phase phi
    duration_s : float
        length >= 0
    """
    rabi_rad_s: float
    detuning_rad_s: float
    phase_rad: float = 0.0
    duration_s: float = 0.0

    def __post_init__(self):
        if self.rabi_rad_s < 0:
            raise ValueError(f"Rabi frequency must be >= 0, got {self.rabi_rad_s}")
        if self.duration_s < 0:
            raise ValueError(f"Duration must be >= 0, got {self.duration_s}")

    def matrix(self):
        """2x2 propagator in the (g, e) basis."""
        gg, ge, eg, ee = drive_elements(self.rabi_rad_s, self.detuning_rad_s, self.phase_rad, self.duration_s)
        return np.array([[gg, ge], [eg, ee]], dtype=complex)


def drive_elements(rabi, detuning, phase, duration):
    """
    Propagator elements for constant drives, broadcast over array arguments.

    Parameters
    ----------
    rabi, detuning, phase, duration : float or np.ndarray
        b, delta, phi and t; any broadcastable shapes

    Returns
    -------
    tuple of np.ndarray
        U_gg, U_ge, U_eg, U_ee
    """
    rabi, detuning, phase, duration = np.broadcast_arrays(*(np.asarray(x, dtype=float)
                                                            for x in (rabi, detuning, phase, duration)))
    omega = np.hypot(rabi, detuning)
    half_angle = 0.5 * omega * duration
    cos = np.cos(half_angle)
    sin = np.sin(half_angle)
    # sin(W t/2)/W -> t/2 as W -> 0
    sin_over_omega = np.where(omega > 0, sin / np.where(omega > 0, omega, 1.0), 0.5 * duration)
    diagonal = 1j * detuning * sin_over_omega
    off_diagonal = -1j * rabi * sin_over_omega
    u_gg = cos + diagonal
    u_ee = cos - diagonal
    u_ge = off_diagonal * np.exp(-1j * phase)
    u_eg = off_diagonal * np.exp(1j * phase)
    return u_gg, u_ge, u_eg, u_ee


def propagate(s: SpinState, seg: DriveSegment):
    """
    Applies the exact propagator of a constant drive.

    Parameters
    ----------
    s : SpinState
        state before the segment
    seg : DriveSegment
        drive

    Returns
    -------
    SpinState
        state after the segment, same norm
    """
    gg, ge, eg, ee = drive_elements(seg.rabi_rad_s, seg.detuning_rad_s, seg.phase_rad, seg.duration_s)
    return SpinState(complex(gg * s.c_g + ge * s.c_e), complex(eg * s.c_g + ee * s.c_e))
