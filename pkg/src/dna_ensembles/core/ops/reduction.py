__docformat__ = "google"

import numpy as np

from .base import Op, OpFamily


def _expand(grad, shape, axis):
    if axis is None:
        return np.broadcast_to(grad, shape)
    return np.broadcast_to(np.expand_dims(grad, axis), shape)


def _count(shape, axis):
    if axis is None:
        return int(np.prod(shape))
    axes = axis if isinstance(axis, tuple) else (axis,)
    return int(np.prod([shape[a] for a in axes]))


def _sum_forward(values, params):
    return np.sum(values[0], axis=params["axis"]), None


def _sum_backward(grad, values, value, saved, params):
    return (np.array(_expand(grad, values[0].shape, params["axis"])),)


def _mean_forward(values, params):
    return np.mean(values[0], axis=params["axis"]), None


def _mean_backward(grad, values, value, saved, params):
    shape = values[0].shape
    return (np.array(_expand(grad, shape, params["axis"])) / _count(shape, params["axis"]),)


def _l2_forward(values, params):
    x = values[0]
    return np.sum(x * x), None


def _l2_backward(grad, values, value, saved, params):
    return (2.0 * grad * values[0],)


def register_ops(registry):
    family = OpFamily.REDUCTION
    registry.register(
        Op(
            "sum",
            family,
            1,
            _sum_forward,
            _sum_backward,
            params=("axis",),
            defaults={"axis": None},
        )
    )
    registry.register(
        Op(
            "mean",
            family,
            1,
            _mean_forward,
            _mean_backward,
            params=("axis",),
            defaults={"axis": None},
        )
    )
    registry.register(Op("l2norm_squared", family, 1, _l2_forward, _l2_backward))
