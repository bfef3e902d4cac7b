from .halfint import (HalfInt, Sublevel, ExcitedSublevel, GROUND_F, EXCITED_F, GROUND_SUBLEVELS,
                      EXCITED_SUBLEVELS, J_GROUND, J_EXCITED, NUCLEAR_SPIN)
from .wigner import wigner3j, wigner6j, wigner3j_exact, wigner6j_exact
from .strengths import (dipole_strength, dipole_strength_exact, decay_rate, branching_fraction,
                        branching_fraction_exact, excitation_matrix, decay_matrix, strength_table,
                        branching_table, POLARIZATIONS)
