import logging
import os
from logging import FileHandler
from logging import Formatter

import numpy as np

PACKAGE_LOGGER = "fountainsim"


def init_logger(filename='fountainsim.log', log_path="."):
    """
    Attaches a file handler to the package logger and returns it.

    Every module logger of the package (``logging.getLogger(__name__)``) propagates
    to the ``fountainsim`` logger, so the file collects the messages of a whole run.

    Parameters
    ----------
    filename : str, optional
        The name of the log file. The default is 'fountainsim.log'.
    log_path : str, optional
        The path of the log file. The default is ".".

    Returns
    -------
    custom_logger : logging.Logger
        The logger.
    filename : str
        Full path of the log file.
    """
    filename = os.path.join(log_path, filename)
    log_format = (
        "%(asctime)s [%(levelname)s]: %(message)s in %(pathname)s:%(lineno)d")
    log_level = logging.INFO
    custom_logger = logging.getLogger(PACKAGE_LOGGER)
    custom_logger.setLevel(log_level)
    # A second run in the same process must not keep writing into the previous file
    for handler in list(custom_logger.handlers):
        if isinstance(handler, FileHandler):
            custom_logger.removeHandler(handler)
            handler.close()
    custom_logger_file_handler = FileHandler(filename)
    custom_logger_file_handler.setLevel(log_level)
    custom_logger_file_handler.setFormatter(Formatter(log_format))
    custom_logger.addHandler(custom_logger_file_handler)
    custom_logger.debug("Logger configured")
    return custom_logger, filename


def create_output_folder(folder):
    """
    Creates a folder to save the outputs of a run.

    Parameters
    ----------
    folder : str
        The path of the folder to create.

    Returns
    -------
    folder : str
        The path of the folder created.
    """
    logger = logging.getLogger(PACKAGE_LOGGER)
    if os.path.exists(folder):
        logger.warning("The folder {} already exists and it will be used".format(folder))
    else:
        os.makedirs(folder, exist_ok=True)
        logger.info("The folder {} has been created.".format(folder))
    return folder


def as_seed_sequence(seed):
    """
    Seed sequence for an int seed; a SeedSequence is returned unchanged.

    Parameters
    ----------
    seed : int or np.random.SeedSequence

    Returns
    -------
    np.random.SeedSequence
    """
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(seed)
