from .fringe_models import FringeModel, RamseyFringe, PatternFringe, discriminator_slope, stable_gain_range
from .servo import ServoConfig, ClockRun, error_signal, run_servo, CLOCK_RUN_COLUMNS, LOCK_LIMIT_FWHM
from .allan import AllanSeries, allan_deviation, octave_taus, ALLAN_COLUMNS
