"""
Wigner 3j and 6j symbols.

The symbols are evaluated exactly by :mod:`sympy.physics.wigner` (Racah formula
over big-integer factorials) and converted to floating point only on return.
Selection rules are checked here on the doubled quantum numbers, so a violated
rule always gives 0 instead of a sympy error.
"""
from functools import lru_cache

import sympy
from sympy.physics.wigner import wigner_3j as _sympy_wigner_3j
from sympy.physics.wigner import wigner_6j as _sympy_wigner_6j

from fountainsim.angular.halfint import HalfInt


def _twice(values):
    return tuple(HalfInt.of(v).twice_value for v in values)


def _triangle(ta, tb, tc):
    """Triangle rule on doubled values, including integer perimeter."""
    return abs(ta - tb) <= tc <= ta + tb and (ta + tb + tc) % 2 == 0


def _allowed_3j(tj1, tj2, tj3, tm1, tm2, tm3):
    if min(tj1, tj2, tj3) < 0:
        return False
    if tm1 + tm2 + tm3 != 0:
        return False
    for tj, tm in ((tj1, tm1), (tj2, tm2), (tj3, tm3)):
        if abs(tm) > tj or (tj + tm) % 2:
            return False
    return _triangle(tj1, tj2, tj3)


@lru_cache(maxsize=None)
def _wigner3j_twice(tj1, tj2, tj3, tm1, tm2, tm3):
    if not _allowed_3j(tj1, tj2, tj3, tm1, tm2, tm3):
        return sympy.S.Zero
    args = [sympy.Rational(t, 2) for t in (tj1, tj2, tj3, tm1, tm2, tm3)]
    return _sympy_wigner_3j(*args)


@lru_cache(maxsize=None)
def _wigner6j_twice(tj1, tj2, tj3, tj4, tj5, tj6):
    if min(tj1, tj2, tj3, tj4, tj5, tj6) < 0:
        return sympy.S.Zero
    triads = ((tj1, tj2, tj3), (tj1, tj5, tj6), (tj4, tj2, tj6), (tj4, tj5, tj3))
    if not all(_triangle(*triad) for triad in triads):
        return sympy.S.Zero
    args = [sympy.Rational(t, 2) for t in (tj1, tj2, tj3, tj4, tj5, tj6)]
    return _sympy_wigner_6j(*args)


def wigner3j_exact(j1, j2, j3, m1, m2, m3):
    """
    Exact Wigner 3j symbol.

    Parameters
    ----------
    j1, j2, j3 : HalfInt, int, float or Fraction
        angular momenta
    m1, m2, m3 : HalfInt, int, float or Fraction
        projections

    Returns
    -------
    sympy.Expr
        rational number times the square root of a rational number; zero when a
        triangle, parity, projection or m-sum rule fails
    """
    return _wigner3j_twice(*_twice((j1, j2, j3, m1, m2, m3)))


def wigner3j(j1, j2, j3, m1, m2, m3):
    """
    Wigner 3j symbol as a float.

    Parameters
    ----------
    j1, j2, j3 : HalfInt, int, float or Fraction
        angular momenta
    m1, m2, m3 : HalfInt, int, float or Fraction
        projections

    Returns
    -------
    float
        value of the symbol, 0.0 when a selection rule fails
    """
    return float(wigner3j_exact(j1, j2, j3, m1, m2, m3))


def wigner6j_exact(j1, j2, j3, j4, j5, j6):
    """
    Exact Wigner 6j symbol {j1 j2 j3; j4 j5 j6}.

    Returns
    -------
    sympy.Expr
        zero when any of the four triads violates the triangle rule
    """
    return _wigner6j_twice(*_twice((j1, j2, j3, j4, j5, j6)))


def wigner6j(j1, j2, j3, j4, j5, j6):
    """
    Wigner 6j symbol {j1 j2 j3; j4 j5 j6} as a float.

    Returns
    -------
    float
        value of the symbol, 0.0 when a triad violates the triangle rule
    """
    return float(wigner6j_exact(j1, j2, j3, j4, j5, j6))
