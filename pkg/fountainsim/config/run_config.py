import copy
import json
import os

from fountainsim.config.parameter import Parameter
from fountainsim.exceptions import ConfigError

SCHEMA_VERSION = 1
EXPERIMENTS = ("fringe", "leakage", "pump_scan", "angle_scan", "servo", "strengths")


def _conf_path(filename):
    return os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "conf", filename)


def load_parameter_ranges(file_path=None):
    """
    Reads the allowed keys of every configuration block.

    Returns
    -------
    dict
        block name -> {key: :class:`~fountainsim.config.Parameter`}
    """
    file_path = _conf_path("parameter_ranges.json") if file_path is None else file_path
    with open(file_path, 'r') as file:
        ranges = json.load(file)
    return {block: {key: Parameter(name=key, **spec) for key, spec in params.items()}
            for block, params in ranges.items()}


class RunConfig:
    """
    This class represents the configuration of one experiment run. It holds the experiment kind,
    the seed, the atom number and one dictionary per configuration block
    (launch, ramsey, detection, pumping, grid, sweep, servo, allan).
    Only the keys given by the user are stored; :meth:`resolved` adds the defaults.

    Attributes
    ----------
    experiment : str
        Experiment kind
    blocks : dict
        Block name -> dictionary of validated user values
    seed : int
        Seed of the run, None when not given
    n_atoms : int
        Monte Carlo atom number, None when not given
    """
    parameter_ranges_json = _conf_path("parameter_ranges.json")
    default_run_configs_json = _conf_path("default_run_configs.json")

    def __init__(self, experiment: str, blocks: dict = None, seed: int = None, n_atoms: int = None):
        """
        Constructs all the necessary attributes for the RunConfig object.

        Parameters
        ----------
        experiment : str
            One of fringe, leakage, pump_scan, angle_scan, servo, strengths
        blocks : dict, optional (default=None)
            Block name -> dictionary of user values
        seed : int, optional (default=None)
            Seed of the run
        n_atoms : int, optional (default=None)
            Monte Carlo atom number

        Raises
        ------
        ConfigError
            If the experiment kind, a block, a key or a value is not allowed
        """
        if experiment not in EXPERIMENTS:
            raise ConfigError(f"Unknown experiment {experiment!r}, expected one of {EXPERIMENTS}")
        self.ranges = load_parameter_ranges(self.parameter_ranges_json)
        self.experiment = experiment
        top_level = self.ranges["top_level"]
        self.seed = top_level["seed"].validate(seed)
        self.n_atoms = None if n_atoms is None else top_level["n_atoms"].validate(n_atoms)
        self.blocks = {}
        for block, values in (blocks or {}).items():
            self.blocks[block] = self._validate_block(block, values)

    def _validate_block(self, block, values):
        if block not in self.ranges or block == "top_level":
            allowed = sorted(b for b in self.ranges if b != "top_level")
            raise ConfigError(f"Unknown configuration block {block!r}, expected one of {allowed}")
        if not isinstance(values, dict):
            raise ConfigError(f"Block {block!r} must be a JSON object")
        unknown = sorted(set(values) - set(self.ranges[block]))
        if unknown:
            raise ConfigError(f"Unknown key(s) {unknown} in block {block!r}")
        return {key: self.ranges[block][key].validate(value) for key, value in values.items()}

    @classmethod
    def from_dict(cls, data):
        """
        This method creates a :class:`~fountainsim.config.RunConfig` from a parsed JSON document.

        Raises
        ------
        ConfigError
            If the schema version is missing or wrong, or a key is unknown
        """
        if not isinstance(data, dict):
            raise ConfigError("A run configuration must be a JSON object")
        data = copy.deepcopy(data)
        if "schema_version" not in data:
            raise ConfigError("Missing schema_version")
        version = data.pop("schema_version")
        if isinstance(version, bool) or version != SCHEMA_VERSION:
            raise ConfigError(f"Unsupported schema_version, expected {SCHEMA_VERSION}")
        if "experiment" not in data:
            raise ConfigError("Missing experiment")
        experiment = data.pop("experiment")
        seed = data.pop("seed", None)
        n_atoms = data.pop("n_atoms", None)
        return cls(experiment=experiment, blocks=data, seed=seed, n_atoms=n_atoms)

    @classmethod
    def from_json(cls, file_path):
        """
        This method creates a :class:`~fountainsim.config.RunConfig` object from a JSON file.

        Parameters
        ----------
        file_path : str
            Path to the JSON file

        Returns
        -------
        :class:`~fountainsim.config.RunConfig`

        Raises
        ------
        ConfigError
            If the file does not exist, is not valid JSON or does not validate
        """
        try:
            with open(file_path, 'r') as file:
                json_data = json.load(file)
        except FileNotFoundError:
            raise ConfigError(f"The file {file_path} does not exist")
        except json.JSONDecodeError as e:
            raise ConfigError(f"The file {file_path} is not a valid JSON file: {e}")
        return cls.from_dict(json_data)

    def to_dict(self):
        data = {"schema_version": SCHEMA_VERSION, "experiment": self.experiment}
        if self.seed is not None:
            data["seed"] = self.seed
        if self.n_atoms is not None:
            data["n_atoms"] = self.n_atoms
        data.update(copy.deepcopy(self.blocks))
        return data

    def to_json(self, file_path, overwrite=False):
        """
        This method saves the run configuration as a JSON file.

        Parameters
        ----------
        file_path : str
            Path to the JSON file
        overwrite : bool, optional (default=False)
            If True, the file will be overwritten if it exists. If False, a FileExistsError will be raised if the file
            exists

        Raises
        ------
        ValueError
            If the file path is None
        FileExistsError
            If the file exists and overwrite is False
        """
        if file_path is None:
            raise ValueError("The file path must be a valid path")
        if os.path.exists(file_path) and not overwrite:
            raise FileExistsError(f"The file path {file_path} exist and overwrite is {overwrite}")
        with open(file_path, 'w') as file:
            json.dump(self.to_dict(), file, indent=4)

    def block(self, name):
        """
        Block with every default materialized.

        Parameters
        ----------
        name : str
            Block name

        Returns
        -------
        dict
        """
        if name not in self.ranges or name == "top_level":
            raise ConfigError(f"Unknown configuration block {name!r}")
        values = self.blocks.get(name, {})
        return {key: param.resolve(values.get(key), key in values) for key, param in self.ranges[name].items()}

    def resolved(self):
        """
        The full configuration with every default materialized, as echoed into run folders.

        Returns
        -------
        dict
        """
        top_level = self.ranges["top_level"]
        data = {"schema_version": SCHEMA_VERSION, "experiment": self.experiment,
                "seed": top_level["seed"].resolve(self.seed, self.seed is not None),
                "n_atoms": top_level["n_atoms"].resolve(self.n_atoms, self.n_atoms is not None)}
        for name in self.ranges:
            if name != "top_level":
                data[name] = self.block(name)
        return data

    def with_overrides(self, seed=None):
        """Copy with the seed replaced when one is given."""
        return RunConfig(self.experiment, copy.deepcopy(self.blocks), self.seed if seed is None else seed,
                         self.n_atoms)

    @staticmethod
    def get_default_run_config(name):
        """
        This method returns one of the bundled example configurations.
        It reads the default_run_configs.json file and loads the file named there.

        Parameters
        ----------
        name : str
            Name of the bundled configuration (fig4, fig5, fig6, fig7, pump_scan, servo, strengths)

        Returns
        -------
        :class:`~fountainsim.config.RunConfig`
        """
        with open(RunConfig.default_run_configs_json, 'r') as file:
            default_configs = json.load(file)
        if name in default_configs.keys():
            return RunConfig.from_json(_conf_path(default_configs[name]))
        else:
            raise ValueError(f"Default run configuration {name} not found")

    @staticmethod
    def default_run_config_path(name):
        with open(RunConfig.default_run_configs_json, 'r') as file:
            default_configs = json.load(file)
        if name not in default_configs:
            raise ValueError(f"Default run configuration {name} not found")
        return os.path.normpath(_conf_path(default_configs[name]))
