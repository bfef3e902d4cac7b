import logging
import os

import numpy as np

from fountainsim.aux.utils import as_seed_sequence, init_logger, create_output_folder


def test_init_logger(tmp_path):
    log_file = 'test.log'
    log_path = str(tmp_path)
    logger, filename = init_logger(log_file, log_path)

    assert os.path.isfile(filename), "Log file should be created"
    assert filename == os.path.join(log_path, log_file), "Logger filename should match"
    assert logger.name == "fountainsim"


def test_module_loggers_reach_the_file(tmp_path):
    _, filename = init_logger('run.log', str(tmp_path))
    logging.getLogger("fountainsim.pumping.rate_equations").info("integration finished")
    with open(filename) as file:
        assert "integration finished" in file.read()


def test_init_logger_replaces_file_handler(tmp_path):
    first = os.path.join(tmp_path, "first")
    second = os.path.join(tmp_path, "second")
    os.makedirs(first)
    os.makedirs(second)
    init_logger('run.log', first)
    logger, _ = init_logger('run.log', second)
    file_handlers = [h for h in logger.handlers if isinstance(h, logging.FileHandler)]
    assert len(file_handlers) == 1
    assert file_handlers[0].baseFilename == os.path.abspath(os.path.join(second, 'run.log'))


def test_create_output_folder(tmp_path):
    folder_path = os.path.join(tmp_path, 'run_folder')

    returned_path = create_output_folder(folder_path)
    assert os.path.isdir(folder_path), "Folder should be created"
    assert returned_path == folder_path, "Returned path should match the created folder path"

    returned_path = create_output_folder(folder_path)
    assert returned_path == folder_path, "Returned path should match the existing folder path"


def test_as_seed_sequence():
    sequence = np.random.SeedSequence(3)
    assert as_seed_sequence(sequence) is sequence
    assert as_seed_sequence(3).entropy == 3
    assert as_seed_sequence(3).spawn(2)[1].spawn_key == sequence.spawn(2)[1].spawn_key
