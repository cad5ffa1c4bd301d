"""DNA ensembles: decorrelated and frequency-partitioned classifier ensembles.

Arms of an ensemble are trained one after another. Later arms either see a
single Fourier band of the input, are pushed to learn features that linear
regression cannot recover from earlier arms, or both. Attacks crafted on the
base arm then transfer less to the other arms.
"""

from . import attacks, core, decor, ensemble, filters, model, signals
from .config import ConfigError, RunConfig, default_config, load_config
from .ensemble import EnsembleKind
from .log import logger

__all__ = [
    "ConfigError",
    "EnsembleKind",
    "RunConfig",
    "attacks",
    "core",
    "decor",
    "default_config",
    "ensemble",
    "filters",
    "load_config",
    "logger",
    "model",
    "signals",
]
