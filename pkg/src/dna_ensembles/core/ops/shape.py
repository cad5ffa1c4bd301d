__docformat__ = "google"

from .base import Op, OpFamily


def _reshape_forward(values, params):
    return values[0].reshape(params["shape"]), None


def _reshape_backward(grad, values, value, saved, params):
    return (grad.reshape(values[0].shape),)


def _transpose_forward(values, params):
    if values[0].ndim != 2:
        raise ValueError(f"transpose expects a matrix, got shape {values[0].shape}")
    return values[0].T, None


def _transpose_backward(grad, values, value, saved, params):
    return (grad.T,)


def register_ops(registry):
    registry.register(
        Op(
            "reshape",
            OpFamily.SHAPE,
            1,
            _reshape_forward,
            _reshape_backward,
            params=("shape",),
        )
    )
    registry.register(
        Op("transpose", OpFamily.SHAPE, 1, _transpose_forward, _transpose_backward)
    )
