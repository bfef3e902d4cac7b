import logging
from dataclasses import dataclass

import allantools
import numpy as np
import pandas as pd

from fountainsim.exceptions import InsufficientData

logger = logging.getLogger(__name__)

ALLAN_COLUMNS = ["tau_s", "adev", "n"]


@dataclass
class AllanSeries:
    """
    Overlapping Allan deviation of a fractional-frequency record.

    Attributes
    ----------
    taus_s : np.ndarray
        averaging times, increasing
    adev : np.ndarray
        deviations >= 0
    n : np.ndarray
        number of terms behind each value
    """
    taus_s: np.ndarray
    adev: np.ndarray
    n: np.ndarray

    def to_frame(self):
        return pd.DataFrame({"tau_s": self.taus_s, "adev": self.adev, "n": self.n})[ALLAN_COLUMNS]

    def loglog_slope(self, tau_min=None, tau_max=None):
        """Least-squares slope of log(adev) against log(tau) over [tau_min, tau_max]."""
        mask = np.ones_like(self.taus_s, dtype=bool)
        if tau_min is not None:
            mask &= self.taus_s >= tau_min
        if tau_max is not None:
            mask &= self.taus_s <= tau_max
        mask &= self.adev > 0
        if mask.sum() < 2:
            raise InsufficientData("At least two non-zero deviations are needed for a slope")
        slope, _ = np.polyfit(np.log(self.taus_s[mask]), np.log(self.adev[mask]), 1)
        return float(slope)


def octave_taus(n_samples, tau0):
    """tau0 * 2^k for every k the record supports."""
    m = 2 ** np.arange(int(np.floor(np.log2(max((n_samples - 1) / 2, 1)))) + 1)
    return tau0 * m


def allan_deviation(y, tau0, taus=None):
    """
    Overlapping Allan deviation.

    Parameters
    ----------
    y : array-like
        fractional frequency, one point every tau0
    tau0 : float
        sample spacing (s)
    taus : array-like, optional (default=None)
        averaging times, multiples of tau0; octaves up to half the record when None

    Returns
    -------
    AllanSeries

    Raises
    ------
    InsufficientData
        If the record is not longer than 2 max(tau) / tau0 samples
    """
    y = np.asarray(y, dtype=float)
    if tau0 <= 0:
        raise ValueError(f"tau0 must be > 0, got {tau0}")
    if taus is None:
        taus = octave_taus(len(y), tau0)
    taus = np.atleast_1d(np.asarray(taus, dtype=float))
    m_max = int(np.round(taus.max() / tau0))
    if len(y) <= 2 * m_max:
        raise InsufficientData(f"{len(y)} samples cannot support tau = {taus.max():.6g} s "
                               f"(needs more than {2 * m_max})")
    taus_used, adev, _, n = allantools.oadev(y, rate=1.0 / tau0, data_type="freq", taus=taus)
    if len(taus_used) != len(np.unique(np.round(taus / tau0))):
        raise InsufficientData("Some averaging times have too few terms")
    logger.debug(f"Allan deviation over {len(y)} samples at {len(taus_used)} averaging times")
    return AllanSeries(np.asarray(taus_used), np.asarray(adev), np.asarray(n))
