"""Small 1-D convolutional classifier with an exposed feature layer."""

__docformat__ = "google"

from .arch import ArchConfig, ClassifierParams, init_params
from .network import forward, forward_graph, infer, predict, weight_tensors
from .serialize import load_params, save_params

__all__ = [
    "ArchConfig",
    "ClassifierParams",
    "forward",
    "forward_graph",
    "infer",
    "init_params",
    "load_params",
    "predict",
    "save_params",
    "weight_tensors",
]
