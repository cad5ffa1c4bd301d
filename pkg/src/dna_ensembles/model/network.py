__docformat__ = "google"

import numpy as np

from ..core import Tensor, as_tensor, conv1d, matmul, mean, relu
from .arch import ArchConfig, ClassifierParams


def forward_graph(arch: ArchConfig, weights, x):
    """Build the forward graph on tensors in ``weights``.

    Args:
    - arch (ArchConfig): Architecture.
    - weights (Mapping[str, Tensor]): One tensor per parameter name.
    - x (Tensor or ndarray): N x L signal batch.

    Returns:
    tuple: (logits N x C, features N x D), both tensors.
    """
    x = as_tensor(x)
    if x.ndim != 2 or x.shape[1] != arch.input_length:
        raise ValueError(
            f"expected a batch of signals of length {arch.input_length}, got shape {x.shape}"
        )

    h = x.reshape(x.shape[0], 1, x.shape[1])
    for index, (channels, kernel, stride) in enumerate(arch.conv_blocks):
        h = conv1d(h, weights[f"conv{index}.weight"], stride=stride, pad=kernel // 2)
        h = relu(h + weights[f"conv{index}.bias"].reshape(channels, 1))

    pooled = mean(h, axis=2)
    features = relu(matmul(pooled, weights["dense.weight"]) + weights["dense.bias"])
    logits = matmul(features, weights["head.weight"]) + weights["head.bias"]
    return logits, features


def weight_tensors(params: ClassifierParams, requires_grad=False):
    return {
        name: Tensor(value, requires_grad=requires_grad)
        for name, value in params.weights.items()
    }


def forward(params: ClassifierParams, x):
    """Logits and penultimate-layer features for a signal batch."""
    return forward_graph(params.arch, weight_tensors(params), x)


def predict(params: ClassifierParams, x):
    """Argmax class per signal; ties go to the lowest class index."""
    logits, _features = forward(params, x)
    return np.argmax(logits.data, axis=1)


def infer(params: ClassifierParams, x, batch_size=256):
    """Chunked forward pass returning plain (logits, features) arrays."""
    x = np.asarray(x, dtype=np.float64)
    logits, features = [], []
    weights = weight_tensors(params)
    for start in range(0, x.shape[0], batch_size):
        chunk_logits, chunk_features = forward_graph(
            params.arch, weights, x[start : start + batch_size]
        )
        logits.append(chunk_logits.data)
        features.append(chunk_features.data)
    if not logits:
        return (
            np.zeros((0, params.arch.num_classes)),
            np.zeros((0, params.arch.feature_dim)),
        )
    return np.concatenate(logits), np.concatenate(features)
