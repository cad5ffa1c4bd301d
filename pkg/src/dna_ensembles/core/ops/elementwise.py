"""Elementwise ops with numpy broadcasting."""

__docformat__ = "google"

import numpy as np

from .base import Op, OpFamily


def unbroadcast(grad, shape):
    """Sum ``grad`` down to ``shape`` after numpy broadcasting."""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def _add_forward(values, params):
    a, b = values
    return a + b, None


def _add_backward(grad, values, value, saved, params):
    a, b = values
    return unbroadcast(grad, a.shape), unbroadcast(grad, b.shape)


def _sub_forward(values, params):
    a, b = values
    return a - b, None


def _sub_backward(grad, values, value, saved, params):
    a, b = values
    return unbroadcast(grad, a.shape), unbroadcast(-grad, b.shape)


def _mul_forward(values, params):
    a, b = values
    return a * b, None


def _mul_backward(grad, values, value, saved, params):
    a, b = values
    return unbroadcast(grad * b, a.shape), unbroadcast(grad * a, b.shape)


def _scale_forward(values, params):
    return values[0] * float(params["factor"]), None


def _scale_backward(grad, values, value, saved, params):
    return (grad * float(params["factor"]),)


def _relu_forward(values, params):
    mask = values[0] > 0
    return np.where(mask, values[0], 0.0), mask


def _relu_backward(grad, values, value, mask, params):
    return (np.where(mask, grad, 0.0),)


def _log_forward(values, params):
    x = values[0]
    if np.any(x <= 0):
        raise ValueError(
            f"log of non-positive argument (minimum {float(np.min(x))!r})"
        )
    return np.log(x), None


def _log_backward(grad, values, value, saved, params):
    return (grad / values[0],)


def register_ops(registry):
    family = OpFamily.ELEMENTWISE
    registry.register(Op("add", family, 2, _add_forward, _add_backward))
    registry.register(Op("sub", family, 2, _sub_forward, _sub_backward))
    registry.register(Op("mul", family, 2, _mul_forward, _mul_backward))
    registry.register(
        Op("scale", family, 1, _scale_forward, _scale_backward, params=("factor",))
    )
    registry.register(Op("relu", family, 1, _relu_forward, _relu_backward))
    registry.register(Op("log", family, 1, _log_forward, _log_backward))
