from fountainsim.angular import branching_table, strength_table
from fountainsim.core.base import Experiment


class StrengthsExperiment(Experiment):
    """
    D2 line transition strengths and hyperfine branching fractions.

    Files: strengths.csv, branching.csv
    """
    kind = "strengths"

    def _run(self):
        strengths = strength_table()
        self.tracker.write_csv(strengths, "strengths.csv")
        self.tracker.write_csv(branching_table(), "branching.csv")
        self.tracker.run_logger.info(f"{len(strengths)} dipole strengths tabulated")
