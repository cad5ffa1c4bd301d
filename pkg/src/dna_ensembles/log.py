__docformat__ = "google"

import logging

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_LOGGER = logging.getLogger("dna_ensembles")
_LOGGER.addHandler(logging.NullHandler())


def logger():
    """
    Returns the package logger. Library code only logs through it; handlers
    are left to the application.

    Returns:
    logging.Logger: The ``dna_ensembles`` logger.

    Example:
    >>> log = logger()
    >>> log.info("Training arm %d", 1)
    """
    return _LOGGER


def verbosity_level(verbose=False, quiet=False):
    """Map the CLI's ``-v``/``-q`` flags to a logging level."""
    if verbose and quiet:
        raise ValueError("verbose and quiet are mutually exclusive")
    if verbose:
        return logging.DEBUG
    return logging.WARNING if quiet else logging.INFO


def configure_logging(verbose=False, quiet=False):
    """
    Attaches a stderr handler to the root logger (once per process) and sets
    the package level from the CLI flags.

    Returns:
    int: The level that was set.
    """
    level = verbosity_level(verbose, quiet)
    logging.basicConfig(level=level, format=LOG_FORMAT)
    _LOGGER.setLevel(level)
    return level
