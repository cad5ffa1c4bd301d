__docformat__ = "google"

import numpy as np

from .base import Op, OpFamily


def _labels(labels, logits):
    labels = np.asarray(labels)
    if labels.ndim != 1 or labels.shape[0] != logits.shape[0]:
        raise ValueError(
            f"expected {logits.shape[0]} labels, got array of shape {labels.shape}"
        )
    if not np.issubdtype(labels.dtype, np.integer):
        raise TypeError(f"labels must be integers, got {labels.dtype}")
    classes = logits.shape[1]
    if labels.size and (labels.min() < 0 or labels.max() >= classes):
        raise ValueError(f"label out of range [0, {classes})")
    return labels


def log_softmax(logits):
    shifted = logits - logits.max(axis=1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))


def _ce_forward(values, params):
    logits = values[0]
    if logits.ndim != 2:
        raise ValueError(f"logits must be N x C, got shape {logits.shape}")
    labels = _labels(params["labels"], logits)
    log_probs = log_softmax(logits)
    rows = np.arange(logits.shape[0])
    return -np.mean(log_probs[rows, labels]), (np.exp(log_probs), labels)


def _ce_backward(grad, values, value, saved, params):
    probs, labels = saved
    delta = probs.copy()
    delta[np.arange(delta.shape[0]), labels] -= 1.0
    return (grad * delta / delta.shape[0],)


def register_ops(registry):
    registry.register(
        Op(
            "softmax_cross_entropy",
            OpFamily.LOSS,
            1,
            _ce_forward,
            _ce_backward,
            params=("labels",),
        )
    )
