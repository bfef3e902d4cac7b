from .populations import GroundPopulations, population_columns
from .lasers import PumpLaser, scattering_rates, ISOTROPIC_ANGLE
from .rate_equations import PumpResult, evolve, jump_matrix, transfer_matrix, MAX_STEP_RATE
from .schemes import one_laser_select, two_laser_select, leak_out_select, F5_F4_SPLITTING_LINEWIDTHS
