__docformat__ = "google"

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .base import Op, OpFamily


def output_length(length, kernel, stride, pad):
    return (length + 2 * pad - kernel) // stride + 1


def _windows(x, kernel, stride, pad):
    padded = np.pad(x, ((0, 0), (0, 0), (pad, pad)))
    # N x C x L' x k
    return sliding_window_view(padded, kernel, axis=2)[:, :, ::stride, :]


def _conv1d_forward(values, params):
    x, w = values
    stride, pad = int(params["stride"]), int(params["pad"])
    if x.ndim != 3 or w.ndim != 3:
        raise ValueError(f"conv1d expects N x C x L and C' x C x k, got {x.shape}, {w.shape}")
    if w.shape[1] != x.shape[1]:
        raise ValueError(f"conv1d channel mismatch: input {x.shape[1]}, kernel {w.shape[1]}")
    if stride < 1 or pad < 0:
        raise ValueError(f"conv1d needs stride >= 1 and pad >= 0, got {stride}, {pad}")
    kernel = w.shape[2]
    if kernel > x.shape[2] + 2 * pad:
        raise ValueError(
            f"kernel of size {kernel} is larger than the padded input ({x.shape[2] + 2 * pad})"
        )

    windows = _windows(x, kernel, stride, pad)
    return np.einsum("nclk,ock->nol", windows, w), windows


def _conv1d_backward(grad, values, value, windows, params):
    x, w = values
    stride, pad = int(params["stride"]), int(params["pad"])
    kernel = w.shape[2]
    out_len = grad.shape[2]

    grad_w = np.einsum("nclk,nol->ock", windows, grad)

    grad_windows = np.einsum("nol,ock->nclk", grad, w)
    grad_padded = np.zeros((x.shape[0], x.shape[1], x.shape[2] + 2 * pad))
    span = stride * (out_len - 1) + 1
    for tap in range(kernel):
        grad_padded[:, :, tap : tap + span : stride] += grad_windows[..., tap]
    grad_x = grad_padded[:, :, pad : pad + x.shape[2]]
    return grad_x, grad_w


def register_ops(registry):
    registry.register(
        Op(
            "conv1d",
            OpFamily.CONV,
            2,
            _conv1d_forward,
            _conv1d_backward,
            params=("stride", "pad"),
            defaults={"stride": 1, "pad": 0},
        )
    )
