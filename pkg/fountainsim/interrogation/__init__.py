from .propagator import SpinState, DriveSegment, drive_elements, propagate
from .ramsey import RamseyConfig, ramsey_probability, ramsey_closed_form
from .pattern import FringePattern, FringeMetrics, pattern, fringe_metrics
