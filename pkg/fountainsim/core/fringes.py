import numpy as np
import pandas as pd

from fountainsim.ballistics import sample_cloud_arrays, transit_table
from fountainsim.core.base import Experiment
from fountainsim.detection import cycle_table, measure_cycles, snr_estimate
from fountainsim.interrogation import fringe_metrics, pattern

LEAKAGE_SUMMARY_COLUMNS = ["leak_ratio", "leak_phase_rad", "central_amplitude", "adjacent_amplitude",
                           "central_to_adjacent_ratio", "fwhm_hz", "peak_probability", "pattern_file"]


class FringeExperiment(Experiment):
    """
    Ramsey pattern of a launch, with state selection and detection noise at the peak.

    Files: pattern.csv, pattern_meta.json, metrics.json, transits.csv, detection_cycles.csv
    """
    kind = "fringe"

    def _run(self):
        launch = self.launch_config()
        ramsey = self.ramsey_config()
        cloud_seed, snr_seed, cycles_seed = self.seed_streams(3)

        fringe = pattern(ramsey, launch, self.detuning_grid(), seed=cloud_seed, threads=self.threads)
        metrics = fringe_metrics(fringe)
        self.tracker.write_csv(fringe.to_frame(), "pattern.csv")
        self.tracker.write_json({**self.metadata(), **fringe.metadata}, "pattern_meta.json")

        cloud = sample_cloud_arrays(launch, cloud_seed, vertical_sigma=ramsey.velocity_sigma)
        self.tracker.write_csv(transit_table(cloud, launch), "transits.csv")

        selection = self.select_states()
        detection = self.detection_config()
        block = self.config["detection"]
        n_detected = max(int(round(block["trap_atoms"] * fringe.metadata["survival_fraction"])), 1)
        p_peak = float(np.clip(selection.clock_fraction * metrics.peak_probability, 0.0, 1.0))
        snr = snr_estimate(detection, p_peak, n_detected, n_cycles=block["n_cycles"],
                           n_repeats=block["n_repeats"], seed=snr_seed)
        cycles = measure_cycles(p_peak, n_detected, detection, block["n_cycles"], cycles_seed)
        self.tracker.write_csv(cycle_table(cycles), "detection_cycles.csv")

        self.tracker.run_logger.info(f"FWHM {metrics.fwhm_hz:.4f} Hz, S/N {snr.snr:.2f}")
        self.tracker.write_json({**self.metadata(),
                                 "metrics": metrics.to_dict(),
                                 "predicted_fwhm_hz": 1.0 / (2.0 * fringe.big_t_s),
                                 "state_selection": {"scheme": self.config["pumping"]["scheme"],
                                                     "clock_fraction": selection.clock_fraction,
                                                     "mean_photons": selection.mean_photons,
                                                     "enhancement": selection.enhancement},
                                 "detection": {"n_detected_atoms": n_detected, "p_peak": p_peak,
                                               "snr": snr.to_dict()}},
                                "metrics.json")


class LeakageExperiment(Experiment):
    """
    Ramsey patterns under a weak microwave drive between the pulses, one per leak ratio and phase.

    Every pattern uses the same sampled cloud. Files: pattern_<i>_<j>.csv, leakage_summary.csv, leakage.json
    """
    kind = "leakage"

    def _run(self):
        launch = self.launch_config()
        (cloud_seed,) = self.seed_streams(1)
        grid = self.detuning_grid()
        sweep = self.config["sweep"]
        rows = []
        for i, leak_ratio in enumerate(sweep["leak_ratios"]):
            for j, leak_phase in enumerate(sweep["leak_phases_rad"]):
                ramsey = self.ramsey_config(leak_ratio=leak_ratio, leak_phase_rad=leak_phase)
                fringe = pattern(ramsey, launch, grid, seed=cloud_seed, threads=self.threads)
                metrics = fringe_metrics(fringe)
                filename = f"pattern_{i}_{j}.csv"
                self.tracker.write_csv(fringe.to_frame(), filename)
                adjacent = [metrics.side_amplitudes[k] for k in (-1, 1) if k in metrics.side_amplitudes]
                rows.append([leak_ratio, leak_phase, metrics.central_amplitude, float(np.mean(adjacent)),
                             metrics.central_to_adjacent_ratio, metrics.fwhm_hz, metrics.peak_probability,
                             filename])
                self.tracker.run_logger.info(f"leak_ratio={leak_ratio}, phase={leak_phase:.4f}: "
                                             f"central/adjacent={metrics.central_to_adjacent_ratio:.4f}")
        self.tracker.write_csv(pd.DataFrame(rows, columns=LEAKAGE_SUMMARY_COLUMNS), "leakage_summary.csv")
        collapsed = [r[0] for r in rows if r[4] < 1]
        self.tracker.write_json({**self.metadata(), "collapsed_leak_ratios": sorted(set(collapsed))},
                                "leakage.json")
