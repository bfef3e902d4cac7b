import json
import os

import pytest


@pytest.fixture
def write_config(tmp_path):
    """Writes a run configuration into the temporary folder and returns its path."""
    def _write(data, name="run.json"):
        path = os.path.join(tmp_path, name)
        with open(path, "w") as file:
            json.dump({"schema_version": 1, **data}, file)
        return path
    return _write


@pytest.fixture
def noiseless_detection():
    return {"projection_noise": False, "photon_noise": False, "arrival_jitter_frac": 0.0}
