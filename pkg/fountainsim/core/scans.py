import numpy as np
import pandas as pd

from fountainsim.core.base import Experiment
from fountainsim.interrogation import fringe_metrics, pattern
from fountainsim.pumping import GroundPopulations, leak_out_select, one_laser_select, two_laser_select

SCAN_COLUMNS = ["scheme", "angle_rad", "photon_budget", "p30", "fringe_amplitude", "mean_photons",
                "recoil_speed", "duration", "enhancement"]


class SelectionScan(Experiment):
    """
    Shared part of the state-selection scans.

    The central fringe amplitude of a fully selected cloud is computed once; each
    row scales it by the |3,0> fraction of its scheme. The first row is the
    one-laser baseline, i.e. the pattern without the dark-state laser.
    """

    def _unit_amplitude(self):
        (cloud_seed,) = self.seed_streams(1)
        fringe = pattern(self.ramsey_config(), self.launch_config(), self.detuning_grid(), seed=cloud_seed,
                         threads=self.threads)
        return fringe_metrics(fringe).central_amplitude

    @staticmethod
    def _row(scheme, angle, budget, result, unit_amplitude):
        enhancement = result.enhancement
        if enhancement is None:
            enhancement = 1.0 if scheme == "one_laser" else np.nan
        return [scheme, angle, budget, result.clock_fraction, result.clock_fraction * unit_amplitude,
                result.mean_photons, result.mean_recoil_speed_addition, result.duration,
                enhancement]

    def _baseline(self, unit_amplitude, record_trajectory=False):
        block = self.config["pumping"]
        baseline = one_laser_select(GroundPopulations.uniform(), block["hyperfine_saturation"],
                                    record_trajectory=record_trajectory)
        return baseline, self._row("one_laser", np.nan, 0.0, baseline, unit_amplitude)

    def _two_laser(self, angle, budget, record_trajectory=False):
        block = self.config["pumping"]
        return two_laser_select(GroundPopulations.uniform(), angle, budget, dark_saturation=block["dark_saturation"],
                                hyperfine_saturation=block["hyperfine_saturation"],
                                record_trajectory=record_trajectory)

    def _write_scan(self, rows, filename):
        table = pd.DataFrame(rows, columns=SCAN_COLUMNS)
        self.tracker.write_csv(table, filename)
        return table


class AngleScanExperiment(SelectionScan):
    """
    Two-laser selection against the polarization angle of the dark-state laser.

    Files: angle_scan.csv, angle_scan.json
    """
    kind = "angle_scan"

    def _run(self):
        unit_amplitude = self._unit_amplitude()
        budget = self.config["pumping"]["photon_budget"]
        _, baseline_row = self._baseline(unit_amplitude)
        rows = [baseline_row]
        for angle in self.config["sweep"]["angles_rad"]:
            result = self._two_laser(angle, budget)
            rows.append(self._row("two_laser", angle, budget, result, unit_amplitude))
            self.tracker.run_logger.info(f"angle={angle:.4f} rad: p30={result.clock_fraction:.5f}")
        table = self._write_scan(rows, "angle_scan.csv")
        scan = table[table["scheme"] == "two_laser"]
        best = scan.loc[scan["fringe_amplitude"].idxmax()]
        self.tracker.write_json({**self.metadata(), "unit_fringe_amplitude": unit_amplitude,
                                 "baseline_p30": baseline_row[3], "best_angle_rad": best["angle_rad"],
                                 "best_enhancement": best["enhancement"]},
                                "angle_scan.json")


class PumpScanExperiment(SelectionScan):
    """
    Two-laser selection against the photon budget, with the one-laser and leak-out references.

    Files: pump_scan.csv, trajectory_one_laser.csv, trajectory_two_laser.csv, pump_scan.json
    """
    kind = "pump_scan"

    def _run(self):
        block = self.config["pumping"]
        unit_amplitude = self._unit_amplitude()
        angle = block["polarization_angle_rad"]
        budgets = self.config["sweep"]["photon_budgets"]

        baseline, baseline_row = self._baseline(unit_amplitude, record_trajectory=True)
        self.tracker.write_csv(baseline.trajectory, "trajectory_one_laser.csv")
        rows = [baseline_row]
        recorded = budgets.index(max(budgets))
        for i, budget in enumerate(budgets):
            result = self._two_laser(angle, budget, record_trajectory=i == recorded)
            rows.append(self._row("two_laser", angle, budget, result, unit_amplitude))
            if result.trajectory is not None:
                self.tracker.write_csv(result.trajectory, "trajectory_two_laser.csv")
        if block["leak_out"]:
            leak = leak_out_select(GroundPopulations.uniform(), block["hyperfine_saturation"],
                                   block["leak_out_detuning_linewidths"])
            rows.append(self._row("leak_out", np.nan, np.nan, leak, unit_amplitude))
        table = self._write_scan(rows, "pump_scan.csv")
        self.tracker.write_json({**self.metadata(), "unit_fringe_amplitude": unit_amplitude,
                                 "baseline_p30": baseline.clock_fraction,
                                 "baseline_photons": baseline.mean_photons,
                                 "max_enhancement": float(table["enhancement"].max())},
                                "pump_scan.json")
