from .measurement import (DetectionConfig, CycleMeasurement, SnrEstimate, measure_cycle, measure_cycles,
                          simulate_counts, snr_estimate, cycle_table, NORMALIZATION_MODES, CYCLE_COLUMNS)
