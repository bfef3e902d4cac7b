"""
Relative dipole strengths and decay branching on the caesium D2 line.

Strengths follow the absorption convention m' = m + q and are normalized per
ground sublevel: summed over polarization and excited sublevel they give exactly 1.
"""
from functools import lru_cache

import numpy as np
import pandas as pd
import sympy

from fountainsim.angular.halfint import (HalfInt, Sublevel, ExcitedSublevel, GROUND_F, EXCITED_F,
                                         GROUND_SUBLEVELS, J_GROUND, J_EXCITED, NUCLEAR_SPIN)
from fountainsim.angular.wigner import wigner3j_exact, wigner6j_exact

POLARIZATIONS = (-1, 0, 1)
STRENGTH_COLUMNS = ["F", "mF", "q", "F'", "mF'", "strength"]
BRANCHING_COLUMNS = ["F'", "F", "branching"]


def _check_polarization(q):
    if q not in POLARIZATIONS:
        raise ValueError(f"Polarization q must be one of {POLARIZATIONS}, got {q}")


@lru_cache(maxsize=None)
def _hyperfine_factor(f_ground, f_excited):
    six_j = wigner6j_exact(J_GROUND, J_EXCITED, 1, f_excited, f_ground, NUCLEAR_SPIN)
    return sympy.expand(six_j ** 2)


def dipole_strength_exact(g: Sublevel, q: int, e: ExcitedSublevel):
    """
    Exact relative strength S(g, q, e) as a sympy rational.

    Parameters
    ----------
    g : Sublevel
        ground sublevel |F, m>
    q : int
        polarization, -1 (sigma-), 0 (pi) or +1 (sigma+)
    e : ExcitedSublevel
        excited sublevel |F', m'>

    Returns
    -------
    sympy.Rational
        (2J+1)(2F+1)(2F'+1) {J J' 1; F' F I}^2 (F 1 F'; m q -m')^2, zero unless m' = m + q
    """
    _check_polarization(q)
    if e.m != g.m + q:
        return sympy.S.Zero
    three_j = wigner3j_exact(g.f, 1, e.f, g.m, q, -e.m)
    prefactor = J_GROUND.multiplicity() * g.f.multiplicity() * e.f.multiplicity()
    return sympy.expand(prefactor * _hyperfine_factor(g.f, e.f) * three_j ** 2)


def dipole_strength(g: Sublevel, q: int, e: ExcitedSublevel):
    """
    Relative dipole transition strength of the channel g --q--> e.

    Parameters
    ----------
    g : Sublevel
        ground sublevel
    q : int
        polarization component, one of -1, 0, +1
    e : ExcitedSublevel
        excited sublevel

    Returns
    -------
    float
        strength >= 0; the strengths out of one ground sublevel sum to 1

    Raises
    ------
    ValueError
        If q is not a spherical polarization component
    """
    return float(dipole_strength_exact(g, q, e))


def decay_rate(e: ExcitedSublevel, g: Sublevel):
    """
    Spontaneous decay rate from e to g in units of the natural linewidth.

    The rates out of any excited sublevel sum to 1.
    """
    q = (e.m - g.m).twice_value // 2
    if abs(q) > 1 or (e.m - g.m).twice_value % 2:
        return 0.0
    ratio = sympy.Rational(J_EXCITED.multiplicity(), J_GROUND.multiplicity())
    return float(ratio * dipole_strength_exact(g, q, e))


def branching_fraction_exact(e: ExcitedSublevel, f_ground):
    f_ground = HalfInt.of(f_ground)
    if f_ground.value not in GROUND_F:
        raise ValueError(f"Ground level F={f_ground} is not one of {GROUND_F}")
    return sympy.expand(J_EXCITED.multiplicity() * f_ground.multiplicity() * _hyperfine_factor(f_ground, e.f))


def branching_fraction(e: ExcitedSublevel, f_ground):
    """
    Probability that the decay of e ends in the ground hyperfine level f_ground.

    Parameters
    ----------
    e : ExcitedSublevel
        decaying sublevel; the result does not depend on its projection
    f_ground : HalfInt or int
        3 or 4

    Returns
    -------
    float
        branching fraction, the fractions to F=3 and F=4 sum to 1

    Raises
    ------
    ValueError
        If f_ground is not a ground hyperfine level
    """
    return float(branching_fraction_exact(e, f_ground))


@lru_cache(maxsize=None)
def excitation_matrix(excited_f):
    """
    Strengths towards one excited hyperfine level.

    Parameters
    ----------
    excited_f : int
        target F'

    Returns
    -------
    np.ndarray
        shape (3, 16), row i holds S(g, q, (F', m_g + q)) for q = POLARIZATIONS[i]
    """
    f_excited = HalfInt.of(excited_f)
    strengths = np.zeros((len(POLARIZATIONS), len(GROUND_SUBLEVELS)))
    for i, q in enumerate(POLARIZATIONS):
        for g in GROUND_SUBLEVELS:
            m_excited = g.m + q
            if abs(m_excited.twice_value) <= f_excited.twice_value:
                strengths[i, g.index] = dipole_strength(g, q, ExcitedSublevel(f_excited, m_excited))
    strengths.setflags(write=False)
    return strengths


@lru_cache(maxsize=None)
def decay_matrix(excited_f):
    """
    Decay probabilities out of one excited hyperfine level.

    Returns
    -------
    np.ndarray
        shape (2F'+1, 16), row k is the distribution over ground sublevels after
        the decay of |F', m' = -F' + k>
    """
    f_excited = HalfInt.of(excited_f)
    excited = [ExcitedSublevel.of(f_excited.value, m) for m in _projections(f_excited)]
    matrix = np.array([[decay_rate(e, g) for g in GROUND_SUBLEVELS] for e in excited])
    matrix.setflags(write=False)
    return matrix


def _projections(j):
    return [HalfInt(t) for t in range(-j.twice_value, j.twice_value + 1, 2)]


def strength_table():
    """
    Every ground sublevel, polarization and reachable excited sublevel of the D2 line.

    Returns
    -------
    pd.DataFrame
        columns F, mF, q, F', mF', strength
    """
    rows = []
    for g in GROUND_SUBLEVELS:
        for q in POLARIZATIONS:
            m_excited = g.m + q
            for f_excited in EXCITED_F:
                if abs(m_excited.twice_value) > 2 * f_excited:
                    continue
                e = ExcitedSublevel(HalfInt.of(f_excited), m_excited)
                rows.append([g.f.value, g.m.value, q, e.f.value, e.m.value, dipole_strength(g, q, e)])
    return pd.DataFrame(rows, columns=STRENGTH_COLUMNS)


def branching_table():
    """
    Hyperfine branching fractions F' -> F.

    Returns
    -------
    pd.DataFrame
        columns F', F, branching
    """
    rows = []
    for f_excited in EXCITED_F:
        e = ExcitedSublevel.of(f_excited, 0)
        for f_ground in GROUND_F:
            rows.append([f_excited, f_ground, branching_fraction(e, f_ground)])
    return pd.DataFrame(rows, columns=BRANCHING_COLUMNS)
