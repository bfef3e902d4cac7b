import os

import numpy as np

import fountainsim
from fountainsim.aux import Tracker
from fountainsim.ballistics import LaunchConfig, launch_speed_from_aom_offset
from fountainsim.config import RunConfig
from fountainsim.detection import DetectionConfig
from fountainsim.exceptions import ConfigError
from fountainsim.interrogation import RamseyConfig
from fountainsim.pumping import GroundPopulations, one_laser_select, two_laser_select


class Experiment:
    """
    Base class of the experiments a run configuration can ask for.

    Subclasses set ``kind`` to the experiment name of the configuration and
    implement :meth:`_run`, which writes the result files through the tracker.

    Attributes
    ----------
    run_config : RunConfig
        configuration of the run, seed override applied
    config : dict
        fully resolved configuration
    seed : int
        root seed; every random stream is spawned from it
    threads : int
        worker threads for the Monte Carlo evaluations
    folder : str
        output folder
    tracker : Tracker
        created when the run starts
    """
    kind = None

    def __init__(self, run_config: RunConfig, folder=os.curdir, seed=None, threads=1, log_file="run.log"):
        """
        Creates object Experiment.

        Parameters
        ----------
        run_config : RunConfig
            configuration of the run
        folder : path, optional (default=os.curdir)
            folder to store the files of the run
        seed : int, optional (default=None)
            overrides the seed of the configuration
        threads : int, optional (default=1)
            worker threads; results do not depend on it
        log_file : str, optional (default="run.log")
            log file name inside the folder
        """
        if run_config.experiment != self.kind:
            raise ConfigError(f"{type(self).__name__} runs {self.kind!r} configurations, "
                              f"got {run_config.experiment!r}")
        if threads < 1:
            raise ConfigError(f"threads must be >= 1, got {threads}")
        self.run_config = run_config.with_overrides(seed=seed)
        self.config = self.run_config.resolved()
        self.seed = self.config["seed"]
        self.threads = threads
        self.folder = folder
        self.log_file = log_file
        self.tracker = None

    @staticmethod
    def get_subclasses(my_class):
        """
        Method to get all the subclasses of a class
        (in this case use to get all the experiments that can be run).

        Parameters
        ----------
        my_class : class
            class to get the subclasses

        Returns
        -------
        list
            list of subclasses
        """
        subclasses = my_class.__subclasses__()
        if len(subclasses) == 0:
            return []
        next_subclasses = []
        [next_subclasses.extend(Experiment.get_subclasses(x)) for x in subclasses]
        return [*subclasses, *next_subclasses]

    @classmethod
    def for_kind(cls, kind):
        """
        Experiment class running the given kind.

        Raises
        ------
        ConfigError
            If no experiment runs that kind
        """
        for subclass in Experiment.get_subclasses(Experiment):
            if subclass.kind == kind:
                return subclass
        raise ConfigError(f"No experiment runs {kind!r}")

    @classmethod
    def from_config(cls, run_config: RunConfig, **kwargs):
        return cls.for_kind(run_config.experiment)(run_config, **kwargs)

    def run(self):
        """
        Runs the experiment and writes its files.

        Returns
        -------
        list
            paths of the written result files
        """
        self.tracker = Tracker(name=self.kind, folder=self.folder, log_file=self.log_file)
        self.tracker.start_run(type(self).__name__, self.seed, self.threads)
        self.tracker.write_config(self.config)
        self._run()
        self.tracker.run_logger.info(f"Run {self.kind} finished, {len(self.tracker.written_files)} files written")
        return list(self.tracker.written_files)

    def _run(self):
        raise NotImplementedError

    def seed_streams(self, n_streams):
        """Independent seeds spawned from the root seed, always in the same order."""
        return np.random.SeedSequence(self.seed).spawn(n_streams)

    def metadata(self):
        """Header shared by the JSON result files."""
        return {"fountainsim_version": fountainsim.__version__, "experiment": self.kind, "seed": self.seed,
                "config": self.config}

    @property
    def n_atoms(self):
        return self.config["n_atoms"]

    def launch_config(self):
        """
        Launch built from the launch block.

        Exactly one of launch_speed, apogee_above_cavity and aom_offset_hz must be set.

        Raises
        ------
        ConfigError
            If none or several launch specifications are given
        """
        block = dict(self.config["launch"])
        speed_keys = ("launch_speed", "apogee_above_cavity", "aom_offset_hz")
        given = [key for key in speed_keys if block[key] is not None]
        if len(given) != 1:
            raise ConfigError(f"Exactly one of {list(speed_keys)} must be set in the launch block, got {given}")
        specification = {key: block.pop(key) for key in speed_keys}
        block["n_atoms"] = self.n_atoms
        if specification["apogee_above_cavity"] is not None:
            return LaunchConfig.from_apogee(specification["apogee_above_cavity"], **block)
        if specification["aom_offset_hz"] is not None:
            return LaunchConfig(launch_speed=launch_speed_from_aom_offset(specification["aom_offset_hz"]), **block)
        return LaunchConfig(launch_speed=specification["launch_speed"], **block)

    def ramsey_config(self, **overrides):
        return RamseyConfig(**{**self.config["ramsey"], **overrides})

    def detection_config(self):
        block = self.config["detection"]
        return DetectionConfig(**{key: value for key, value in block.items()
                                  if key not in ("trap_atoms", "n_cycles", "n_repeats")})

    def detuning_grid(self):
        block = self.config["grid"]
        half_span = block["span_hz"] / 2
        return np.linspace(block["center_hz"] - half_span, block["center_hz"] + half_span, block["n_points"])

    def select_states(self, record_trajectory=False):
        """
        Runs the configured state-selection scheme from an isotropic trap distribution.

        Returns
        -------
        PumpResult
        """
        block = self.config["pumping"]
        initial = GroundPopulations.uniform()
        if block["scheme"] == "one_laser":
            return one_laser_select(initial, block["hyperfine_saturation"], record_trajectory=record_trajectory)
        return two_laser_select(initial, block["polarization_angle_rad"], block["photon_budget"],
                                dark_saturation=block["dark_saturation"],
                                hyperfine_saturation=block["hyperfine_saturation"],
                                record_trajectory=record_trajectory)
