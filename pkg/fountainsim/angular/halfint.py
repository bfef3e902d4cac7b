from dataclasses import dataclass
from fractions import Fraction

import sympy


@dataclass(frozen=True, order=True)
class HalfInt:
    """
    Integer or half-integer angular momentum quantum number.

    The number is stored as twice its value so that j = 7/2 is held exactly as
    ``HalfInt(7)``.

    Attributes
    ----------
    twice_value : int
        2j
    """
    twice_value: int

    def __post_init__(self):
        if not isinstance(self.twice_value, int) or isinstance(self.twice_value, bool):
            raise TypeError(f"twice_value must be an int, got {self.twice_value!r}")

    @classmethod
    def of(cls, value):
        """
        Builds a HalfInt from its value.

        Parameters
        ----------
        value : int, float, Fraction or HalfInt
            an integer or half-integer

        Returns
        -------
        HalfInt

        Raises
        ------
        ValueError
            If the value is neither integer nor half-integer
        """
        if isinstance(value, HalfInt):
            return value
        twice = Fraction(value) * 2
        if twice.denominator != 1:
            raise ValueError(f"{value} is not an integer or half-integer")
        return cls(int(twice))

    @property
    def value(self):
        """int when integral, float otherwise."""
        if self.twice_value % 2 == 0:
            return self.twice_value // 2
        return self.twice_value / 2

    @property
    def rational(self):
        """Exact sympy value."""
        return sympy.Rational(self.twice_value, 2)

    @property
    def is_integer(self):
        return self.twice_value % 2 == 0

    def multiplicity(self):
        """2j + 1"""
        return self.twice_value + 1

    def __neg__(self):
        return HalfInt(-self.twice_value)

    def __add__(self, other):
        return HalfInt(self.twice_value + HalfInt.of(other).twice_value)

    def __sub__(self, other):
        return HalfInt(self.twice_value - HalfInt.of(other).twice_value)

    def __float__(self):
        return self.twice_value / 2

    def __str__(self):
        return str(self.value) if self.is_integer else f"{self.twice_value}/2"


def _check_projection(kind, f, m, allowed_f):
    if f.value not in allowed_f:
        raise ValueError(f"{kind} F={f} is not one of {sorted(allowed_f)}")
    if abs(m.twice_value) > f.twice_value or (f.twice_value - m.twice_value) % 2:
        raise ValueError(f"{kind} m={m} is not a projection of F={f}")


@dataclass(frozen=True, order=True)
class Sublevel:
    """
    Zeeman sublevel |F, m⟩ of the caesium 6S1/2 ground state.

    Attributes
    ----------
    f : HalfInt
        hyperfine level, 3 or 4
    m : HalfInt
        projection, -f <= m <= f
    """
    f: HalfInt
    m: HalfInt

    def __post_init__(self):
        _check_projection("Ground", self.f, self.m, GROUND_F)

    @classmethod
    def of(cls, f, m):
        return cls(HalfInt.of(f), HalfInt.of(m))

    @property
    def index(self):
        """Position of the sublevel in the 16-entry population vector."""
        return GROUND_INDEX[self]

    def __str__(self):
        return f"|{self.f},{self.m}>"


@dataclass(frozen=True, order=True)
class ExcitedSublevel:
    """
    Zeeman sublevel |F', m'⟩ of the caesium 6P3/2 state (D2 line).

    Attributes
    ----------
    f : HalfInt
        hyperfine level, 2 to 5
    m : HalfInt
        projection, -f <= m <= f
    """
    f: HalfInt
    m: HalfInt

    def __post_init__(self):
        _check_projection("Excited", self.f, self.m, EXCITED_F)

    @classmethod
    def of(cls, f, m):
        return cls(HalfInt.of(f), HalfInt.of(m))

    def __str__(self):
        return f"|{self.f}',{self.m}>"


GROUND_F = (3, 4)
EXCITED_F = (2, 3, 4, 5)

# Caesium D2 line: J = 1/2 -> J' = 3/2, nuclear spin 7/2
J_GROUND = HalfInt(1)
J_EXCITED = HalfInt(3)
NUCLEAR_SPIN = HalfInt(7)

# F=3 sublevels first, each level ordered by m
GROUND_SUBLEVELS = tuple(Sublevel.of(f, m) for f in GROUND_F for m in range(-f, f + 1))
GROUND_INDEX = {level: i for i, level in enumerate(GROUND_SUBLEVELS)}
EXCITED_SUBLEVELS = tuple(ExcitedSublevel.of(f, m) for f in EXCITED_F for m in range(-f, f + 1))
