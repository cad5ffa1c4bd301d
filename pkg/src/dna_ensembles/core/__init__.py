"""Reverse-mode differentiation and dense numerics used by every model."""

__docformat__ = "google"

from . import spectral
from .functional import (
    add,
    conv1d,
    l2norm_squared,
    least_squares_residual,
    log,
    matmul,
    mean,
    relu,
    scale,
    softmax_cross_entropy,
    spectral_filter,
)
from .gradcheck import gradcheck
from .ops import NonFiniteError, registry
from .tensor import Tensor, as_tensor, gradients

__all__ = [
    "NonFiniteError",
    "Tensor",
    "add",
    "as_tensor",
    "conv1d",
    "gradcheck",
    "gradients",
    "l2norm_squared",
    "least_squares_residual",
    "log",
    "matmul",
    "mean",
    "registry",
    "relu",
    "scale",
    "softmax_cross_entropy",
    "spectral",
    "spectral_filter",
]
