"""Functional front end over the op registry."""

__docformat__ = "google"

from .ops.registry import registry
from .tensor import Tensor


def add(a, b) -> Tensor:
    return registry.apply("add", a, b)


def scale(a, factor) -> Tensor:
    return registry.apply("scale", a, factor=factor)


def relu(a) -> Tensor:
    return registry.apply("relu", a)


def log(a) -> Tensor:
    return registry.apply("log", a)


def mean(a, axis=None) -> Tensor:
    return registry.apply("mean", a, axis=axis)


def l2norm_squared(a) -> Tensor:
    return registry.apply("l2norm_squared", a)


def matmul(a, b) -> Tensor:
    return registry.apply("matmul", a, b)


def conv1d(x, w, stride=1, pad=0) -> Tensor:
    return registry.apply("conv1d", x, w, stride=stride, pad=pad)


def softmax_cross_entropy(logits, labels) -> Tensor:
    return registry.apply("softmax_cross_entropy", logits, labels=labels)


def spectral_filter(x, response) -> Tensor:
    return registry.apply("spectral_filter", x, response=response)


def least_squares_residual(regressor, target):
    """Residual and total sums of squares of OLS ``target ~ [regressor, 1]``.

    Args:
    - regressor (Tensor): N x P, must satisfy N > P + 1.
    - target (Tensor): N x Q.

    Returns:
    tuple: (SS_res, SS_total), both differentiable scalars.
    """
    ss_res = registry.apply("residual_sum_of_squares", regressor, target)
    return ss_res, l2norm_squared(target)
