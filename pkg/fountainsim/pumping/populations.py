import numpy as np

from fountainsim.angular import GROUND_SUBLEVELS, Sublevel

NORMALIZATION_TOLERANCE = 1e-9


class GroundPopulations:
    """
    Population distribution over the 16 ground sublevels, F=3 first.

    Attributes
    ----------
    p : np.ndarray
        read-only array of 16 non-negative values summing to 1
    """

    def __init__(self, p):
        """
        Creates object GroundPopulations.

        Parameters
        ----------
        p : array-like
            16 populations ordered as :data:`~fountainsim.angular.GROUND_SUBLEVELS`

        Raises
        ------
        ValueError
            If the shape is wrong, an entry is negative or the sum differs from 1
        """
        p = np.array(p, dtype=float)
        if p.shape != (len(GROUND_SUBLEVELS),):
            raise ValueError(f"Populations must have {len(GROUND_SUBLEVELS)} entries, got shape {p.shape}")
        if np.any(p < -NORMALIZATION_TOLERANCE):
            raise ValueError("Populations must be non-negative")
        if abs(p.sum() - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValueError(f"Populations must sum to 1, got {p.sum()!r}")
        p.setflags(write=False)
        self.p = p

    @classmethod
    def uniform(cls):
        """Isotropic trap distribution, 1/16 per sublevel."""
        return cls(np.full(len(GROUND_SUBLEVELS), 1.0 / len(GROUND_SUBLEVELS)))

    @classmethod
    def uniform_over(cls, f):
        mask = np.array([level.f.value == f for level in GROUND_SUBLEVELS], dtype=float)
        if not mask.any():
            raise ValueError(f"No ground sublevels with F={f}")
        return cls(mask / mask.sum())

    @classmethod
    def pure(cls, f, m):
        p = np.zeros(len(GROUND_SUBLEVELS))
        p[Sublevel.of(f, m).index] = 1.0
        return cls(p)

    def __getitem__(self, level):
        if not isinstance(level, Sublevel):
            level = Sublevel.of(*level)
        return float(self.p[level.index])

    def level_total(self, f):
        """Total population of the ground hyperfine level F."""
        return float(sum(self.p[level.index] for level in GROUND_SUBLEVELS if level.f.value == f))

    def to_dict(self):
        return {str(level): float(self.p[level.index]) for level in GROUND_SUBLEVELS}

    def __eq__(self, other):
        return isinstance(other, GroundPopulations) and np.array_equal(self.p, other.p)

    def __str__(self):
        return f"GroundPopulations(F=3: {self.level_total(3):.6f}, F=4: {self.level_total(4):.6f})"

    def __repr__(self):
        return self.__str__()


def population_columns():
    """CSV column names of the 16 populations."""
    return [f"p_{level.f}_{level.m}" for level in GROUND_SUBLEVELS]
