"""Central finite-difference gradient checks."""

__docformat__ = "google"

import numpy as np

from .tensor import Tensor


def numerical_gradient(func, arrays, index, step=1e-6):
    """Central differences of scalar ``func(*arrays)`` w.r.t. ``arrays[index]``."""
    arrays = [np.array(a, dtype=np.float64) for a in arrays]
    target = arrays[index]
    grad = np.zeros_like(target)
    it = np.nditer(target, flags=["multi_index"])
    for _ in it:
        position = it.multi_index
        original = target[position]
        target[position] = original + step
        upper = _scalar(func(*[Tensor(a) for a in arrays]))
        target[position] = original - step
        lower = _scalar(func(*[Tensor(a) for a in arrays]))
        target[position] = original
        grad[position] = (upper - lower) / (2 * step)
    return grad


def analytic_gradients(func, arrays):
    tensors = [Tensor(a, requires_grad=True) for a in arrays]
    func(*tensors).backward()
    return [t.grad for t in tensors]


def relative_error(analytic, numeric):
    scale = max(np.max(np.abs(analytic)), np.max(np.abs(numeric)), 1e-12)
    return float(np.max(np.abs(analytic - numeric)) / scale)


def gradcheck(func, arrays, step=1e-6):
    """Return the worst relative error over all inputs of ``func``.

    Example:
    >>> err = gradcheck(lambda a, b: (a @ b).sum(), [np.ones((2, 3)), np.ones((3, 1))])
    >>> err < 1e-6
    True
    """
    analytic = analytic_gradients(func, arrays)
    return max(
        relative_error(grad, numerical_gradient(func, arrays, index, step))
        for index, grad in enumerate(analytic)
    )


def _scalar(value):
    return float(value.data) if isinstance(value, Tensor) else float(value)
