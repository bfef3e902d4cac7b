from fountainsim.aux.utils import create_output_folder, init_logger
import json
import os
import numpy as np
import pandas as pd

CSV_FLOAT_FORMAT = "%.17g"


def _to_builtin(value):
    """Converts numpy scalars and arrays so that ``json`` can serialize them."""
    if isinstance(value, dict):
        return {str(k): _to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_builtin(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_to_builtin(v) for v in value.tolist()]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        value = float(value)
    if isinstance(value, float) and not np.isfinite(value):
        # JSON has no infinity; keep the information as a string
        return str(value)
    return value


class Tracker:
    """
    Tracker class for logging and storing the outputs of a simulation run.

    The layout of an output folder is::

        <folder>/
        ├── config.json      fully resolved configuration
        ├── run.log          diagnostics (not byte-reproducible)
        └── results/         CSV and JSON data files

    Parameters
    ----------
    name : str
        Name of the run (usually the experiment kind).
    folder : str
        Folder where the outputs of the run will be stored.
    log_file : str
        Name of the log file.
    """

    def __init__(self, name, folder=os.curdir, log_file="run.log"):

        self.name = name
        # Main folder, current by default
        self.folder = create_output_folder(folder)
        # Log files
        self.run_logger, self.log_file = init_logger(log_file, self.folder)

        # Paths
        self.results_path = os.path.join(self.folder, "results")
        os.makedirs(self.results_path, exist_ok=True)
        self.written_files = []

    def start_run(self, experiment_class, seed, threads):
        """
        Logs the start of a run.

        Parameters
        ----------
        experiment_class : str
            Name of the experiment class.
        seed : int
            seed of the run
        threads : int
            number of worker threads
        """
        self.run_logger.info(f"Initiating {self.name} run...")
        self.run_logger.info(f"Experiment: {experiment_class} - seed {seed} - threads {threads}")

    def write_config(self, resolved_config, filename="config.json"):
        """
        Echoes the fully resolved configuration of the run.

        Parameters
        ----------
        resolved_config : dict
            configuration with every default materialized
        filename : str, optional (default="config.json")
            name of the file inside the run folder
        """
        path = os.path.join(self.folder, filename)
        self._dump_json(resolved_config, path)
        return path

    def write_csv(self, data, filename, columns=None):
        """
        Method to write a table to a csv file in the results folder

        Parameters
        ----------
        data : pandas.DataFrame or dict
            table to write
        filename : str
            name of the csv file
        columns : list, optional (default=None)
            column order; all columns of ``data`` when None

        Returns
        -------
        path : str
            path of the written file
        """
        df = data if isinstance(data, pd.DataFrame) else pd.DataFrame(data)
        if columns is not None:
            df = df[columns]
        path = os.path.join(self.results_path, filename)
        df.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
        self.written_files.append(path)
        self.run_logger.info(f"Written {path} ({len(df)} rows)")
        return path

    def write_json(self, data, filename):
        """
        Method to write a json document to the results folder

        Parameters
        ----------
        data : dict
            document to write
        filename : str
            name of the json file

        Returns
        -------
        path : str
            path of the written file
        """
        path = os.path.join(self.results_path, filename)
        self._dump_json(data, path)
        self.written_files.append(path)
        self.run_logger.info(f"Written {path}")
        return path

    @staticmethod
    def _dump_json(data, path):
        with open(path, "w") as file:
            json.dump(_to_builtin(data), file, indent=2, sort_keys=True)
            file.write("\n")
