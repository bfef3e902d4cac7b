from .base import Experiment
from .fringes import FringeExperiment, LeakageExperiment
from .scans import AngleScanExperiment, PumpScanExperiment
from .clock import ServoExperiment
from .tables import StrengthsExperiment
