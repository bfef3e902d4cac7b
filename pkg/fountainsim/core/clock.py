from fountainsim.ballistics import transit
from fountainsim.clockloop import (PatternFringe, RamseyFringe, ServoConfig, allan_deviation, discriminator_slope,
                                   run_servo, stable_gain_range)
from fountainsim.core.base import Experiment
from fountainsim.exceptions import InsufficientData
from fountainsim.interrogation import pattern


class ServoExperiment(Experiment):
    """
    Closed frequency loop on the fringe of a launch, followed by its Allan deviation.

    The analytic model is the single-velocity fringe of an atom at the mean launch
    speed; the pattern model interpolates a synthesized pattern over the configured grid.

    Files: clock_run.csv, allan.csv, servo_summary.json
    """
    kind = "servo"

    def fringe_model(self, cloud_seed):
        block = self.config["servo"]
        launch = self.launch_config()
        ramsey = self.ramsey_config()
        if block["fringe_model"] == "pattern":
            return PatternFringe(pattern(ramsey, launch, self.detuning_grid(), seed=cloud_seed,
                                         threads=self.threads))
        record = transit(launch.launch_speed, launch)
        return RamseyFringe(record.big_t, record.tau, ramsey.per_pulse_area, contrast=block["contrast"])

    def _run(self):
        block = self.config["servo"]
        cloud_seed, servo_seed = self.seed_streams(2)
        model = self.fringe_model(cloud_seed)
        cfg = ServoConfig(gain=block["gain"], modulation_hz=block["modulation_hz"],
                          cycle_time_s=block["cycle_time_s"], n_cycles=block["n_cycles"],
                          initial_offset_hz=block["initial_offset_hz"])
        clock_run = run_servo(cfg, model, self.detection_config(), block["n_detected_atoms"], seed=servo_seed)
        self.tracker.write_csv(clock_run.to_frame(), "clock_run.csv")

        allan = allan_deviation(clock_run.fractional_frequency(), clock_run.tau0_s, self.config["allan"]["taus_s"])
        self.tracker.write_csv(allan.to_frame(), "allan.csv")
        summary = {"fringe_model": block["fringe_model"], "fwhm_hz": model.fwhm_hz, "big_t_s": model.big_t_s,
                   "gain": clock_run.gain, "modulation_hz": clock_run.modulation_hz,
                   "discriminator_slope": discriminator_slope(model, clock_run.modulation_hz),
                   "stable_gain_range": stable_gain_range(model, clock_run.modulation_hz),
                   "tau0_s": clock_run.tau0_s, "final_offset_hz": clock_run.offset[-1]}
        try:
            summary["allan_loglog_slope"] = allan.loglog_slope()
        except InsufficientData:
            self.tracker.run_logger.warning("Allan deviation has fewer than two non-zero points, no slope")
        self.tracker.run_logger.info(f"Servo finished at offset {clock_run.offset[-1]:.3e} Hz")
        self.tracker.write_json({**self.metadata(), **summary}, "servo_summary.json")
